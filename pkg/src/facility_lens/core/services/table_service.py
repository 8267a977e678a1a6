from dataclasses import dataclass
from typing import Optional

import logfire

from facility_lens.core.analysis.bounds import closed_form_bounds
from facility_lens.core.analysis.search import SearchMode, measure
from facility_lens.core.domain.config import MechanismSpec, SearchConfig
from facility_lens.core.domain.events import EventEmitter
from facility_lens.core.domain.models import Bound, Objective, RatioReport, TableRow
from facility_lens.core.domain.rational import parse_rational
from facility_lens.core.planning.ledger import TableLedger

CITED = "cited"
MATCH = "match"
MISMATCH = "mismatch"
VERIFIED = "verified"
REFUTED = "refuted"


def parse_cell(text: str) -> Optional[Bound]:
    """Stored cell text as a bound; None for symbolic cells such as ``n-2``."""
    if text == "inf":
        return Bound.unbounded()
    try:
        return Bound(parse_rational(text))
    except ValueError:
        return None


@dataclass(frozen=True)
class TableCell:
    row: TableRow
    objective: Objective
    mode: SearchMode
    stored: str
    computed: Optional[Bound]
    status: str
    report: Optional[RatioReport] = None

    @property
    def verification(self) -> Optional[str]:
        if self.report is None:
            return None
        return REFUTED if self.report.contradicts else VERIFIED


class TableService:
    """Recomputes the stored summary table and optionally checks it by search."""

    def __init__(self, ledger: TableLedger):
        self.ledger = ledger

    @staticmethod
    def spec_for(row: TableRow) -> MechanismSpec:
        return MechanismSpec(family=row.family, param=row.param)

    def reproduce(
        self,
        verify: bool = False,
        config: Optional[SearchConfig] = None,
        emitter: Optional[EventEmitter] = None,
    ) -> list[TableCell]:
        cells: list[TableCell] = []
        with logfire.span("table reproduction", verify=verify):
            for row in self.ledger.rows:
                for objective in (Objective.MAX_DISTANCE, Objective.MIN_UTILITY):
                    stored = row.stored[objective]
                    if row.cited:
                        for mode, text in zip(SearchMode, stored):
                            cells.append(TableCell(row, objective, mode, text, None, CITED))
                        continue
                    spec = self.spec_for(row)
                    computed = closed_form_bounds(spec, objective)
                    for mode, text, bound in zip(SearchMode, stored, computed):
                        status = MATCH if parse_cell(text) == bound else MISMATCH
                        report = None
                        if verify and config is not None:
                            report = measure(spec, objective, mode, config, emitter)
                        cells.append(TableCell(row, objective, mode, text, bound, status, report))
            mismatches = sum(1 for c in cells if c.status == MISMATCH)
            refuted = sum(1 for c in cells if c.verification == REFUTED)
            logfire.info("table reproduced", cells=len(cells), mismatches=mismatches, refuted=refuted)
        return cells
