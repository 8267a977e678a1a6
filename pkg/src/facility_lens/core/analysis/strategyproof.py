"""Exhaustive strategy-proofness check on the search grid.

For every grid instance, every prediction on the (coarser) prediction grid,
every agent and every grid misreport, the deviating agent's cost is its
(expected) distance from its true location to the nearest facility. A
misreport that strictly lowers it is a :class:`Violation`.
"""

import time
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from facility_lens.core.analysis.executor import chunked, run_chunks
from facility_lens.core.analysis.search import (
    Agents,
    grid_instances,
    instance_sizes,
    prediction_grid,
)
from facility_lens.core.domain.config import MechanismSpec, SearchConfig
from facility_lens.core.domain.events import EventEmitter
from facility_lens.core.domain.models import (
    Instance,
    Outcome,
    Predictions,
    SearchFinishedEvent,
    SearchProgressEvent,
    SearchStartedEvent,
    Violation,
)
from facility_lens.core.domain.rational import grid
from facility_lens.core.mechanisms.registry import Mechanism, outcome_cost

_CHUNKS_PER_WORKER = 4


class SPTask(NamedTuple):
    spec: MechanismSpec
    resolution: int
    prediction_resolution: int
    agents: Sequence[Agents]


def _check_chunk(task: SPTask) -> list[Violation]:
    mechanism = Mechanism(task.spec)
    reports = grid(task.resolution)
    violations: list[Violation] = []
    for predictions in prediction_grid(task.prediction_resolution, mechanism.info.predictions):
        outcomes: dict[Agents, Outcome] = {}

        def run(instance: Instance, _p: Optional[Predictions] = predictions) -> Outcome:
            outcome = outcomes.get(instance.agents)
            if outcome is None:
                outcome = outcomes[instance.agents] = mechanism(instance, _p)
            return outcome

        for agents in task.agents:
            instance = Instance(agents)
            truthful = run(instance)
            seen: set[Fraction] = set()
            for index, location in enumerate(agents):
                # agents sharing a location are interchangeable
                if location in seen:
                    continue
                seen.add(location)
                before = outcome_cost(truthful, location)
                if before == 0:
                    continue
                for report in reports:
                    if report == location:
                        continue
                    after = outcome_cost(run(instance.with_report(index, report)), location)
                    if after < before:
                        violations.append(
                            Violation(
                                instance=instance,
                                agent=index,
                                misreport=report,
                                cost_before=before,
                                cost_after=after,
                                predictions=predictions,
                            )
                        )
    return violations


def _order(v: Violation):
    key = v.predictions.key() if v.predictions is not None else ()
    return (v.instance.agents, v.agent, v.misreport, key)


def check_strategyproof(
    spec: MechanismSpec,
    config: SearchConfig,
    emitter: Optional[EventEmitter] = None,
) -> list[Violation]:
    """Every profitable single-agent misreport on the grid, in a stable order."""
    agents = grid_instances(config.grid_resolution, instance_sizes(spec, config.max_agents))
    # each chunk rebuilds its outcome memo, so a serial run keeps one chunk
    chunk_count = 1 if config.workers <= 1 else config.workers * _CHUNKS_PER_WORKER
    tasks = [
        SPTask(spec, config.grid_resolution, config.prediction_resolution, chunk)
        for chunk in chunked(agents, chunk_count)
    ]
    label = spec.label()
    if emitter:
        emitter.emit(
            SearchStartedEvent(
                type="search_started",
                timestamp=time.time(),
                mechanism=label,
                objective="cost",
                mode="strategyproofness",
                total=len(tasks),
            )
        )
    violations: list[Violation] = []
    for done, found in enumerate(run_chunks(_check_chunk, tasks, config.workers), start=1):
        violations.extend(found)
        if emitter:
            emitter.emit(
                SearchProgressEvent(
                    type="search_progress",
                    timestamp=time.time(),
                    mechanism=label,
                    done=done,
                    total=len(tasks),
                    worst=str(len(violations)),
                )
            )
    violations.sort(key=_order)
    if emitter:
        emitter.emit(
            SearchFinishedEvent(
                type="search_finished",
                timestamp=time.time(),
                mechanism=label,
                measured=str(len(violations)),
                evaluated=len(agents),
                witness=str(violations[0].instance) if violations else None,
            )
        )
    return violations
