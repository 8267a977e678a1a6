from facility_lens.core.analysis.search import grid_instances, instance_sizes, prediction_grid
from facility_lens.core.domain.config import MechanismSpec, SearchConfig
from facility_lens.core.domain.errors import UnknownFamily
from facility_lens.core.domain.models import Instance, Lottery, Objective, Violation
from facility_lens.core.domain.rational import ZERO, grid
from facility_lens.core.mechanisms.registry import Mechanism, outcome_value


def check_unanimity(spec: MechanismSpec, config: SearchConfig) -> list[Violation]:
    """All agents at one grid point must get every facility at that point.

    Randomized families must put all their mass there.
    """
    mechanism = Mechanism(spec)
    violations = []
    sizes = instance_sizes(spec, config.max_agents)
    for x in grid(config.grid_resolution):
        for n in sizes:
            instance = Instance((x,) * n)
            for predictions in prediction_grid(config.prediction_resolution, mechanism.info.predictions):
                outcome = mechanism(instance, predictions)
                placements = (
                    [p for p, _ in outcome.outcomes] if isinstance(outcome, Lottery) else [outcome]
                )
                if all(f == x for p in placements for f in p.facilities):
                    continue
                violations.append(
                    Violation(
                        instance=instance,
                        agent=0,
                        misreport=None,
                        cost_before=ZERO,
                        cost_after=outcome_value(outcome, instance, Objective.MAX_DISTANCE),
                        predictions=predictions,
                        kind="unanimity",
                        detail=f"outcome {outcome}",
                    )
                )
    return violations


def check_pareto(spec: MechanismSpec, config: SearchConfig) -> list[Violation]:
    """Single deterministic facility must lie within [x_1, x_n]."""
    info = spec.info
    if info.randomized or info.facilities != 1:
        raise UnknownFamily(spec.family, "pareto check needs a single-facility deterministic family")
    mechanism = Mechanism(spec)
    violations = []
    agents = grid_instances(config.grid_resolution, instance_sizes(spec, config.max_agents))
    for predictions in prediction_grid(config.prediction_resolution, info.predictions):
        for reports in agents:
            instance = Instance(reports)
            y = mechanism(instance, predictions).facilities[0]
            if instance.leftmost <= y <= instance.rightmost:
                continue
            gap = instance.leftmost - y if y < instance.leftmost else y - instance.rightmost
            violations.append(
                Violation(
                    instance=instance,
                    agent=0 if y < instance.leftmost else instance.n - 1,
                    misreport=None,
                    cost_before=ZERO,
                    cost_after=gap,
                    predictions=predictions,
                    kind="pareto",
                    detail=f"facility {y} outside [{instance.leftmost}, {instance.rightmost}]",
                )
            )
    return violations
