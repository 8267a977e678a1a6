from dataclasses import dataclass
from typing import Optional

import logfire

from facility_lens.core.analysis.search import SearchMode, measure
from facility_lens.core.analysis.witnesses import Witness, evaluate_witness, theorem_witnesses
from facility_lens.core.domain.config import MechanismSpec, SearchConfig
from facility_lens.core.domain.events import EventEmitter
from facility_lens.core.domain.models import Bound, Objective, RatioReport


@dataclass(frozen=True)
class WitnessCheck:
    witness: Witness
    evaluated: Bound

    @property
    def matches(self) -> bool:
        return self.evaluated == self.witness.expected


class RatioService:
    def measure(
        self,
        spec: MechanismSpec,
        objective: Objective,
        mode: SearchMode,
        config: SearchConfig,
        emitter: Optional[EventEmitter] = None,
    ) -> RatioReport:
        with logfire.span(
            "ratio search {mechanism} {objective} {mode}",
            mechanism=spec.label(),
            objective=objective.value,
            mode=mode.value,
            resolution=config.grid_resolution,
            max_agents=config.max_agents,
            workers=config.workers,
        ):
            report = measure(spec, objective, mode, config, emitter)
            logfire.info(
                "ratio search finished",
                measured=report.measured.render(),
                closed_form=report.closed_form.render(),
                evaluated=report.evaluated,
                contradicts=report.contradicts,
            )
        return report

    def witnesses(
        self, spec: MechanismSpec, objective: Objective, mode: SearchMode
    ) -> list[WitnessCheck]:
        """Catalogue witnesses for this cell, each evaluated exactly."""
        checks = []
        for witness in theorem_witnesses():
            if witness.spec != spec or witness.objective is not objective or witness.mode is not mode:
                continue
            checks.append(WitnessCheck(witness, evaluate_witness(witness)))
        return checks
