"""Adversarial grid search for worst-case consistency and robustness ratios.

Instances are every sorted multiset of grid points with at most
``max_agents`` agents, scanned in lexicographic order of their agent
tuples; predictions are scanned in lexicographic order within each
instance. The reported witness is the first point attaining the worst
ratio, so serial and parallel scans agree.
"""

import time
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm
from typing import Iterable, NamedTuple, Optional, Sequence

from facility_lens.core.analysis.bounds import closed_form_bounds
from facility_lens.core.analysis.executor import chunked, run_chunks
from facility_lens.core.domain.config import Family, MechanismSpec, PredictionKind, SearchConfig
from facility_lens.core.domain.events import EventEmitter
from facility_lens.core.domain.models import (
    Bound,
    Instance,
    Objective,
    OptimumReport,
    Outcome,
    Placement,
    Prediction,
    PredictionPair,
    Predictions,
    RatioReport,
    SearchFinishedEvent,
    SearchProgressEvent,
    SearchStartedEvent,
)
from facility_lens.core.domain.rational import ONE, ZERO, grid
from facility_lens.core.mechanisms.registry import Mechanism, outcome_value
from facility_lens.core.objectives import approximation_ratio, farthest_distance, optimum

Agents = tuple[Fraction, ...]
PredictionKey = Optional[tuple[Fraction, ...]]

# chunks per worker; more chunks give smoother progress events
_CHUNKS_PER_WORKER = 4
_MIN_CHUNKS = 8


class SearchMode(str, Enum):
    CONSISTENCY = "consistency"
    ROBUSTNESS = "robustness"


def instance_sizes(spec: MechanismSpec, max_agents: int) -> tuple[int, ...]:
    """Agent counts a family can be run on; fixed by the phantom profile for genmedian."""
    if spec.family is Family.GEN_MEDIAN:
        return (len(spec.phantoms) + 1,)
    return tuple(range(1, max_agents + 1))


def grid_instances(resolution: int, sizes: Iterable[int]) -> list[Agents]:
    points = grid(resolution)
    agents: list[Agents] = []
    for n in sizes:
        agents.extend(combinations_with_replacement(points, n))
    agents.sort()
    return agents


def prediction_grid(resolution: int, kind: PredictionKind) -> list[Optional[Predictions]]:
    if kind is PredictionKind.NONE:
        return [None]
    points = grid(resolution)
    if kind is PredictionKind.SINGLE:
        return [Prediction(p) for p in points]
    return [PredictionPair.of(a, b) for a, b in combinations_with_replacement(points, 2)]


def correct_predictions(opt: OptimumReport, kind: PredictionKind) -> Optional[Predictions]:
    """The exact optimal placement, as the prediction a consistent mechanism gets."""
    if kind is PredictionKind.NONE:
        return None
    facilities = opt.placement.facilities
    if kind is PredictionKind.SINGLE:
        return Prediction(facilities[0])
    return PredictionPair.of(facilities[0], facilities[-1])


def prediction_key(predictions: Optional[Predictions]) -> PredictionKey:
    return None if predictions is None else predictions.key()


def predictions_from_key(key: PredictionKey) -> Optional[Predictions]:
    if key is None:
        return None
    if len(key) == 1:
        return Prediction(key[0])
    return PredictionPair.of(*key)


class ScanTask(NamedTuple):
    spec: MechanismSpec
    objective: Objective
    mode: SearchMode
    resolution: int
    agents: Sequence[Agents]


class ScanPartial(NamedTuple):
    """Worst point of one chunk; plain tuples so it crosses process boundaries."""

    found: bool
    unbounded: bool
    ratio: Optional[Fraction]
    agents: Optional[Agents]
    predictions: PredictionKey
    evaluated: int

    @property
    def bound(self) -> Bound:
        return Bound.unbounded() if self.unbounded else Bound(self.ratio)


class GuidedMenu(NamedTuple):
    """Distinct guided placements for one (x_1, x_n), in first-seen prediction order.

    Facilities are integers over ``scale``, which every grid point divides.
    """

    scale: int
    placements: tuple[tuple[int, ...], ...]
    keys: tuple[PredictionKey, ...]


def _scaled(value: Fraction, scale: int) -> int:
    return value.numerator * (scale // value.denominator)


class ChunkScanner:
    """Worst ratio per instance for one chunk.

    Families flagged ``extremes_only`` are memoised on (x_1, x_n). Under
    robustness, a prediction-using family is scored once per distinct guided
    placement: its ratio grows with the guided placement's max distance, so
    the worst prediction is the first one reaching the largest distance.
    """

    def __init__(self, task: ScanTask):
        self.mechanism = Mechanism(task.spec)
        self.info = self.mechanism.info
        self.objective = task.objective
        self.resolution = task.resolution
        self.robust = task.mode is SearchMode.ROBUSTNESS
        self.grid_predictions = (
            prediction_grid(task.resolution, self.info.predictions) if self.robust else [None]
        )
        self._memo: dict[tuple[Fraction, Fraction], tuple[Bound, PredictionKey]] = {}
        self._menus: dict[tuple[Fraction, Fraction], GuidedMenu] = {}

    @property
    def points_per_instance(self) -> int:
        return len(self.grid_predictions)

    def worst(self, agents: Agents) -> tuple[Bound, PredictionKey]:
        if not self.info.extremes_only:
            return self._worst(Instance(agents))
        ends = (agents[0], agents[-1])
        hit = self._memo.get(ends)
        if hit is None:
            hit = self._memo[ends] = self._worst(Instance(agents))
        return hit

    def _ratio(self, outcome: Outcome, instance: Instance, opt: OptimumReport) -> Bound:
        return approximation_ratio(outcome_value(outcome, instance, self.objective), opt, self.objective)

    def _worst(self, instance: Instance) -> tuple[Bound, PredictionKey]:
        opt = optimum(instance, self.info.facilities)
        if not self.robust:
            predictions = correct_predictions(opt, self.info.predictions)
            return self._ratio(self.mechanism(instance, predictions), instance, opt), prediction_key(predictions)
        if self.mechanism.split is None:
            return self._ratio(self.mechanism(instance, None), instance, opt), None
        return self._worst_guided(instance, opt)

    def _menu(self, instance: Instance) -> GuidedMenu:
        ends = (instance.leftmost, instance.rightmost)
        menu = self._menus.get(ends)
        if menu is not None:
            return menu
        guided = self.mechanism.split.guided
        first_seen: dict[Placement, PredictionKey] = {}
        for predictions in self.grid_predictions:
            placement = guided(instance, predictions)
            if placement not in first_seen:
                first_seen[placement] = predictions.key()
        scale = lcm(self.resolution, *(f.denominator for p in first_seen for f in p.facilities))
        menu = self._menus[ends] = GuidedMenu(
            scale,
            tuple(tuple(_scaled(f, scale) for f in p.facilities) for p in first_seen),
            tuple(first_seen.values()),
        )
        return menu

    def _worst_guided(self, instance: Instance, opt: OptimumReport) -> tuple[Bound, PredictionKey]:
        split = self.mechanism.split
        menu = self._menu(instance)
        agents = [_scaled(x, menu.scale) for x in instance.agents]
        top, top_at, first_positive = -1, 0, None
        for index, facilities in enumerate(menu.placements):
            d = farthest_distance(agents, facilities)
            if d > top:
                top, top_at = d, index
            if first_positive is None and d > 0:
                first_positive = index

        weight = split.free_weight
        free = outcome_value(split.free(instance), instance, self.objective) if weight else ZERO
        guided = Fraction(top, menu.scale)
        if self.objective is Objective.MIN_UTILITY:
            guided = ONE - guided
        ratio = approximation_ratio(weight * free + (ONE - weight) * guided, opt, self.objective)

        if weight == ONE:
            at = 0
        elif self.objective is Objective.MAX_DISTANCE and opt.opt_max_distance == 0:
            # every positive value is unbounded here, not only the largest
            at = 0 if weight * free > 0 or first_positive is None else first_positive
        else:
            at = top_at
        return ratio, menu.keys[at]


def scan_chunk(task: ScanTask) -> ScanPartial:
    scanner = ChunkScanner(task)
    best: Optional[Bound] = None
    best_agents: Optional[Agents] = None
    best_key: PredictionKey = None
    for agents in task.agents:
        ratio, key = scanner.worst(agents)
        if best is None or best < ratio:
            best, best_agents, best_key = ratio, agents, key
    evaluated = len(task.agents) * scanner.points_per_instance
    if best is None:
        return ScanPartial(False, False, None, None, None, evaluated)
    return ScanPartial(True, best.is_unbounded, best.value, best_agents, best_key, evaluated)


def reduce_partials(partials: Iterable[ScanPartial]) -> ScanPartial:
    """Fold chunk results in chunk order, keeping only strict improvements."""
    best: Optional[ScanPartial] = None
    evaluated = 0
    for partial in partials:
        evaluated += partial.evaluated
        if not partial.found:
            continue
        if best is None or best.bound < partial.bound:
            best = partial
    if best is None:
        return ScanPartial(False, False, None, None, None, evaluated)
    return best._replace(evaluated=evaluated)


def measure(
    spec: MechanismSpec,
    objective: Objective,
    mode: SearchMode,
    config: SearchConfig,
    emitter: Optional[EventEmitter] = None,
) -> RatioReport:
    """Worst ratio over the grid, next to the stated bound for ``mode``."""
    objective, mode = Objective(objective), SearchMode(mode)
    stated = closed_form_bounds(spec, objective)
    closed = stated.consistency if mode is SearchMode.CONSISTENCY else stated.robustness

    agents = grid_instances(config.grid_resolution, instance_sizes(spec, config.max_agents))
    chunk_count = max(_MIN_CHUNKS, config.workers * _CHUNKS_PER_WORKER)
    tasks = [
        ScanTask(spec, objective, mode, config.grid_resolution, chunk)
        for chunk in chunked(agents, chunk_count)
    ]
    label = spec.label()
    if emitter:
        emitter.emit(
            SearchStartedEvent(
                type="search_started",
                timestamp=time.time(),
                mechanism=label,
                objective=objective.value,
                mode=mode.value,
                total=len(tasks),
            )
        )

    partials = []
    for done, partial in enumerate(run_chunks(scan_chunk, tasks, config.workers), start=1):
        partials.append(partial)
        if emitter:
            emitter.emit(
                SearchProgressEvent(
                    type="search_progress",
                    timestamp=time.time(),
                    mechanism=label,
                    done=done,
                    total=len(tasks),
                    worst=reduce_partials(partials).bound.render(),
                )
            )
    result = reduce_partials(partials)

    measured = result.bound
    if (
        closed.is_unbounded
        and not measured.is_unbounded
        and measured.value > config.divergence_threshold
    ):
        measured = Bound.unbounded()

    report = RatioReport(
        measured=measured,
        closed_form=closed,
        witness_instance=Instance(result.agents) if result.found else None,
        witness_predictions=predictions_from_key(result.predictions),
        witness_ratio=result.ratio,
        evaluated=result.evaluated,
        tolerance=config.tolerance,
    )
    if emitter:
        emitter.emit(
            SearchFinishedEvent(
                type="search_finished",
                timestamp=time.time(),
                mechanism=label,
                measured=measured.render(),
                evaluated=result.evaluated,
                witness=str(report.witness_instance) if report.witness_instance else None,
            )
        )
    return report


def measure_consistency(
    spec: MechanismSpec,
    objective: Objective,
    config: SearchConfig,
    emitter: Optional[EventEmitter] = None,
) -> RatioReport:
    return measure(spec, objective, SearchMode.CONSISTENCY, config, emitter)


def measure_robustness(
    spec: MechanismSpec,
    objective: Objective,
    config: SearchConfig,
    emitter: Optional[EventEmitter] = None,
) -> RatioReport:
    return measure(spec, objective, SearchMode.ROBUSTNESS, config, emitter)
