from enum import Enum
from typing import Optional

import logfire

from facility_lens.core.analysis.properties import check_pareto, check_unanimity
from facility_lens.core.analysis.strategyproof import check_strategyproof
from facility_lens.core.domain.config import MechanismSpec, SearchConfig
from facility_lens.core.domain.events import EventEmitter
from facility_lens.core.domain.models import Violation


class Property(str, Enum):
    STRATEGYPROOFNESS = "strategyproofness"
    UNANIMITY = "unanimity"
    PARETO = "pareto"


class PropertyService:
    """Runs the normative property checkers with one span per check."""

    def check(
        self,
        spec: MechanismSpec,
        config: SearchConfig,
        prop: Property = Property.STRATEGYPROOFNESS,
        emitter: Optional[EventEmitter] = None,
    ) -> list[Violation]:
        prop = Property(prop)
        with logfire.span(
            "{prop} check {mechanism}",
            prop=prop.value,
            mechanism=spec.label(),
            resolution=config.grid_resolution,
            max_agents=config.max_agents,
        ):
            if prop is Property.STRATEGYPROOFNESS:
                violations = check_strategyproof(spec, config, emitter)
            elif prop is Property.UNANIMITY:
                violations = check_unanimity(spec, config)
            else:
                violations = check_pareto(spec, config)
            logfire.info("{prop} check finished", prop=prop.value, violations=len(violations))
        return violations
