import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Dict, Iterable, Optional, Union

from facility_lens.core.domain.errors import (
    EmptyInstance,
    InvalidLottery,
    OutOfRange,
)
from facility_lens.core.domain.rational import ONE, ZERO, format_list, format_rational

# A point of [0, 1]; always an exact Fraction.
Location = Fraction


def _check_location(value: Fraction) -> None:
    if value < 0 or value > 1:
        raise OutOfRange(value)


class Objective(str, Enum):
    MAX_DISTANCE = "max-distance"
    MIN_UTILITY = "min-utility"


@dataclass(frozen=True, slots=True)
class Instance:
    """Agent reports, sorted ascending (x_1 <= ... <= x_n)."""

    agents: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.agents:
            raise EmptyInstance()
        for a, b in zip(self.agents, self.agents[1:]):
            if b < a:
                raise ValueError("Instance agents must be sorted; use make_instance")
        _check_location(self.agents[0])
        _check_location(self.agents[-1])

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def leftmost(self) -> Fraction:
        return self.agents[0]

    @property
    def rightmost(self) -> Fraction:
        return self.agents[-1]

    def with_report(self, index: int, report: Fraction) -> "Instance":
        """The instance after agent ``index`` reports ``report`` instead."""
        agents = list(self.agents)
        agents[index] = report
        return Instance(tuple(sorted(agents)))

    def __str__(self) -> str:
        return format_list(self.agents)


@dataclass(frozen=True, slots=True, order=True)
class Placement:
    """One or two facility locations, stored sorted."""

    facilities: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.facilities) not in (1, 2):
            raise ValueError(f"a placement has 1 or 2 facilities, got {len(self.facilities)}")
        for f in self.facilities:
            _check_location(f)
        if len(self.facilities) == 2 and self.facilities[1] < self.facilities[0]:
            object.__setattr__(self, "facilities", (self.facilities[1], self.facilities[0]))

    @classmethod
    def at(cls, *facilities: Fraction) -> "Placement":
        return cls(tuple(facilities))

    def __str__(self) -> str:
        return format_list(self.facilities)


@dataclass(frozen=True, slots=True)
class Prediction:
    value: Fraction

    def __post_init__(self):
        _check_location(self.value)

    @property
    def is_extreme(self) -> bool:
        return self.value == ZERO or self.value == ONE

    def key(self) -> tuple[Fraction, ...]:
        return (self.value,)

    def __str__(self) -> str:
        return format_rational(self.value)


@dataclass(frozen=True, slots=True)
class PredictionPair:
    """Predictions for the leftmost and rightmost facility; swapped if reversed."""

    left: Prediction
    right: Prediction

    def __post_init__(self):
        if self.right.value < self.left.value:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)

    @classmethod
    def of(cls, left: Fraction, right: Fraction) -> "PredictionPair":
        return cls(Prediction(left), Prediction(right))

    def key(self) -> tuple[Fraction, ...]:
        return (self.left.value, self.right.value)

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"


Predictions = Union[Prediction, PredictionPair]


@dataclass(frozen=True, slots=True)
class PhantomProfile:
    """The n-1 fixed phantom reports of a generalized median mechanism."""

    phantoms: tuple[Fraction, ...]

    def __post_init__(self):
        for z in self.phantoms:
            _check_location(z)

    @classmethod
    def constant(cls, value: Fraction, count: int) -> "PhantomProfile":
        return cls((value,) * count)

    def __len__(self) -> int:
        return len(self.phantoms)


@dataclass(frozen=True, slots=True)
class OptimumReport:
    placement: Placement
    opt_max_distance: Fraction
    opt_min_utility: Fraction


@total_ordering
@dataclass(frozen=True, slots=True)
class Bound:
    """An approximation ratio; ``value is None`` means unbounded."""

    value: Optional[Fraction] = None

    @classmethod
    def unbounded(cls) -> "Bound":
        return cls(None)

    @classmethod
    def of(cls, value: Union[Fraction, int]) -> "Bound":
        return cls(Fraction(value))

    @property
    def is_unbounded(self) -> bool:
        return self.value is None

    def __lt__(self, other: "Bound") -> bool:
        if not isinstance(other, Bound):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def exceeds(self, threshold: Fraction) -> bool:
        return self.value is None or self.value > threshold

    def render(self) -> str:
        return "inf" if self.value is None else format_rational(self.value)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class Lottery:
    """A finite distribution over placements, canonical and exact.

    Build through :meth:`from_weights` or :meth:`point`; coincident
    placements are merged, zero weights dropped and outcomes sorted.
    """

    outcomes: tuple[tuple[Placement, Fraction], ...]

    def __post_init__(self):
        if not self.outcomes:
            raise InvalidLottery("a lottery needs at least one outcome")
        total = ZERO
        for _, p in self.outcomes:
            if p <= 0:
                raise InvalidLottery(f"non-positive probability {format_rational(p)}")
            total += p
        if total != ONE:
            raise InvalidLottery(f"probabilities sum to {format_rational(total)}, not 1")

    @classmethod
    def from_weights(cls, weighted: Iterable[tuple[Placement, Fraction]]) -> "Lottery":
        merged: dict[Placement, Fraction] = {}
        for placement, p in weighted:
            if p == 0:
                continue
            merged[placement] = merged.get(placement, ZERO) + p
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def point(cls, placement: Placement) -> "Lottery":
        return cls(((placement, ONE),))

    @classmethod
    def mixture(cls, parts: Iterable[tuple[Fraction, "Lottery"]]) -> "Lottery":
        """Mix lotteries with fixed weights (weights must sum to 1)."""
        return cls.from_weights(
            (placement, w * p) for w, lottery in parts for placement, p in lottery.outcomes
        )

    @property
    def is_point_mass(self) -> bool:
        return len(self.outcomes) == 1

    def probability_of(self, placement: Placement) -> Fraction:
        for outcome, p in self.outcomes:
            if outcome == placement:
                return p
        return ZERO

    def __str__(self) -> str:
        return "{" + ", ".join(f"{pl}: {format_rational(p)}" for pl, p in self.outcomes) + "}"


Outcome = Union[Placement, Lottery]


@dataclass(frozen=True, slots=True)
class RatioReport:
    """Measured worst case of a grid search next to the stated bound."""

    measured: Bound
    closed_form: Bound
    witness_instance: Optional[Instance]
    witness_predictions: Optional[Predictions]
    witness_ratio: Optional[Fraction]
    evaluated: int = 0
    tolerance: Fraction = ZERO

    @property
    def contradicts(self) -> bool:
        """True when the search found a ratio the stated bound rules out."""
        if self.closed_form.is_unbounded:
            return False
        if self.measured.is_unbounded:
            return True
        return self.measured.value > self.closed_form.value + self.tolerance

    @property
    def gap(self) -> Optional[Fraction]:
        """closed_form - measured, when both are finite."""
        if self.closed_form.is_unbounded or self.measured.is_unbounded:
            return None
        return self.closed_form.value - self.measured.value


@dataclass(frozen=True, slots=True)
class Violation:
    """A profitable misreport (strategy-proofness) or a failed property."""

    instance: Instance
    agent: int
    misreport: Optional[Fraction]
    cost_before: Fraction
    cost_after: Fraction
    predictions: Optional[Predictions] = None
    kind: str = "strategyproofness"
    detail: str = field(default="", compare=False)


@dataclass
class SearchEvent:
    """Base class for search progress events."""

    type: str
    timestamp: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass
class SearchStartedEvent(SearchEvent):
    mechanism: str
    objective: str
    mode: str
    total: int


@dataclass
class SearchProgressEvent(SearchEvent):
    mechanism: str
    done: int
    total: int
    worst: str


@dataclass
class SearchFinishedEvent(SearchEvent):
    mechanism: str
    measured: str
    evaluated: int
    witness: Optional[str] = None


@dataclass
class TableRow:
    """One row of the stored summary table; cells are (consistency, robustness) text."""

    id: str
    section: str
    label: str
    family: Optional[str]
    param: Optional[str]
    cited: bool
    stored: Dict[Objective, tuple[str, str]]
