from fractions import Fraction
from typing import Iterable, Optional

import logfire

from facility_lens.core.analysis.bounds import SweepRow, sweep_grid, tradeoff_sweep
from facility_lens.core.domain.config import Family
from facility_lens.core.domain.models import Objective


class SweepService:
    def sweep(
        self,
        family: Family,
        objective: Objective,
        params: Optional[Iterable[Fraction]] = None,
        steps: int = 20,
    ) -> list[SweepRow]:
        values = list(params) if params else sweep_grid(family, steps)
        with logfire.span("sweep {family} {objective}", family=family.value, objective=objective.value):
            return tradeoff_sweep(family, values, objective)
