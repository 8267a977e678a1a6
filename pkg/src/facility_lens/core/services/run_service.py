from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import logfire

from facility_lens.core.domain.config import MechanismSpec
from facility_lens.core.domain.models import (
    Bound,
    Instance,
    Objective,
    OptimumReport,
    Outcome,
    Predictions,
)
from facility_lens.core.mechanisms.registry import Mechanism, outcome_value
from facility_lens.core.objectives import approximation_ratio, optimum


@dataclass(frozen=True)
class RunResult:
    spec: MechanismSpec
    instance: Instance
    predictions: Optional[Predictions]
    objective: Objective
    outcome: Outcome
    max_distance: Fraction
    min_utility: Fraction
    optimum: OptimumReport
    ratio: Bound


class RunService:
    """Evaluates one mechanism on one instance."""

    def run(
        self,
        spec: MechanismSpec,
        instance: Instance,
        predictions: Optional[Predictions],
        objective: Objective,
    ) -> RunResult:
        mechanism = Mechanism(spec)
        outcome = mechanism(instance, predictions)
        opt = optimum(instance, mechanism.info.facilities)
        max_distance = outcome_value(outcome, instance, Objective.MAX_DISTANCE)
        min_utility = outcome_value(outcome, instance, Objective.MIN_UTILITY)
        value = max_distance if objective is Objective.MAX_DISTANCE else min_utility
        ratio = approximation_ratio(value, opt, objective)
        logfire.info(
            "run {mechanism} on {agents}",
            mechanism=spec.label(),
            agents=str(instance),
            objective=objective.value,
            ratio=ratio.render(),
        )
        return RunResult(spec, instance, predictions, objective, outcome, max_distance, min_utility, opt, ratio)
