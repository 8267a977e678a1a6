from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Annotated, Optional

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)

from facility_lens.core.domain.errors import (
    InvalidDelta,
    InvalidGamma,
    InvalidLambda,
    InvalidTheta,
    UnknownFamily,
)
from facility_lens.core.domain.models import PhantomProfile
from facility_lens.core.domain.rational import (
    HALF,
    ZERO,
    format_rational,
    parse_location,
    parse_rational,
)

Rational = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str, when_used="json"),
]
UnitRational = Annotated[
    Fraction,
    BeforeValidator(parse_location),
    PlainSerializer(format_rational, return_type=str, when_used="json"),
]


class Family(str, Enum):
    MIN_MAX_P = "minmaxp"
    MIN_MAX_P_GAMMA = "minmaxp-gamma"
    MID_OR_NEAREST = "midornearest"
    GEN_MEDIAN = "genmedian"
    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"
    MEDIAN = "median"
    LRM = "lrm"
    LRMT = "lrmt"
    LRM_P = "lrmp"
    LRMT_P = "lrmtp"
    MIN_MAX_2P = "minmax2p"
    MIN_MAX_2P_LAMBDA = "minmax2p-lambda"
    RAND_ENDS = "randends"
    RAND_ENDS_2P = "randends2p"
    BROKEN_THIRD = "broken-third"


class PredictionKind(str, Enum):
    NONE = "none"
    SINGLE = "single"
    PAIR = "pair"


@dataclass(frozen=True)
class FamilyInfo:
    facilities: int
    randomized: bool
    predictions: PredictionKind
    symbol: Optional[str] = None
    upper: Optional[Fraction] = None
    error: Optional[type] = None
    # one facility placed from x_1, x_n and the predictions alone, so every
    # ratio is a function of the extremes
    extremes_only: bool = False

    @property
    def parameterized(self) -> bool:
        return self.symbol is not None


FAMILY_INFO: dict[Family, FamilyInfo] = {
    Family.MIN_MAX_P: FamilyInfo(1, False, PredictionKind.SINGLE, extremes_only=True),
    Family.MIN_MAX_P_GAMMA: FamilyInfo(1, False, PredictionKind.SINGLE, "gamma", HALF, InvalidGamma, extremes_only=True),
    Family.MID_OR_NEAREST: FamilyInfo(1, False, PredictionKind.NONE),
    Family.GEN_MEDIAN: FamilyInfo(1, False, PredictionKind.NONE),
    Family.LEFTMOST: FamilyInfo(1, False, PredictionKind.NONE),
    Family.RIGHTMOST: FamilyInfo(1, False, PredictionKind.NONE),
    Family.MEDIAN: FamilyInfo(1, False, PredictionKind.NONE),
    Family.LRM: FamilyInfo(1, True, PredictionKind.NONE, extremes_only=True),
    Family.LRMT: FamilyInfo(1, True, PredictionKind.NONE, extremes_only=True),
    Family.LRM_P: FamilyInfo(1, True, PredictionKind.SINGLE, "delta", HALF, InvalidDelta, extremes_only=True),
    Family.LRMT_P: FamilyInfo(1, True, PredictionKind.SINGLE, "delta", HALF, InvalidDelta, extremes_only=True),
    Family.MIN_MAX_2P: FamilyInfo(2, False, PredictionKind.PAIR),
    Family.MIN_MAX_2P_LAMBDA: FamilyInfo(2, False, PredictionKind.PAIR, "lambda", Fraction(1, 4), InvalidLambda),
    Family.RAND_ENDS: FamilyInfo(2, True, PredictionKind.NONE),
    Family.RAND_ENDS_2P: FamilyInfo(2, True, PredictionKind.PAIR, "theta", HALF, InvalidTheta),
    Family.BROKEN_THIRD: FamilyInfo(1, False, PredictionKind.NONE, extremes_only=True),
}


def family_info(family: Family) -> FamilyInfo:
    try:
        return FAMILY_INFO[Family(family)]
    except (KeyError, ValueError) as e:
        raise UnknownFamily(family) from e


class MechanismSpec(BaseModel):
    """A mechanism family plus its parameter (gamma/delta/lambda/theta) or phantoms."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: Family
    param: Optional[Rational] = None
    phantoms: Optional[tuple[UnitRational, ...]] = None

    @model_validator(mode="after")
    def _check_param(self) -> "MechanismSpec":
        info = family_info(self.family)
        if info.parameterized:
            if self.param is None:
                raise ValueError(f"{self.family.value} needs --param ({info.symbol})")
            if self.param < ZERO or self.param > info.upper:
                raise info.error(self.param)
        elif self.param is not None:
            raise ValueError(f"{self.family.value} takes no parameter")
        if self.family is Family.GEN_MEDIAN:
            if self.phantoms is None:
                raise ValueError("genmedian needs a phantom profile")
        elif self.phantoms is not None:
            raise ValueError(f"{self.family.value} takes no phantoms")
        return self

    @property
    def info(self) -> FamilyInfo:
        return family_info(self.family)

    @property
    def phantom_profile(self) -> Optional[PhantomProfile]:
        return None if self.phantoms is None else PhantomProfile(tuple(self.phantoms))

    def label(self) -> str:
        if self.param is not None:
            return f"{self.family.value}[{self.info.symbol}={format_rational(self.param)}]"
        if self.phantoms is not None:
            return f"{self.family.value}[{','.join(format_rational(z) for z in self.phantoms)}]"
        return self.family.value


class SearchConfig(BaseModel):
    """Grid used by the adversarial searches (step 1/grid_resolution)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid_resolution: int = Field(default=20, ge=2)
    max_agents: int = Field(default=4, ge=1)
    tolerance: Rational = ZERO
    divergence_threshold: Rational = Fraction(100)
    workers: int = Field(default=1, ge=1)
    prediction_resolution: int = Field(default=4, ge=1)

    @field_validator("tolerance")
    @classmethod
    def _non_negative(cls, v: Fraction) -> Fraction:
        if v < 0:
            raise ValueError("tolerance must be >= 0")
        return v

    @field_validator("divergence_threshold")
    @classmethod
    def _at_least_one(cls, v: Fraction) -> Fraction:
        if v < 1:
            raise ValueError("divergence threshold must be >= 1")
        return v
