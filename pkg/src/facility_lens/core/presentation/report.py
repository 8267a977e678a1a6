"""Plain-text and CSV renderings of command results.

Everything here is deterministic: the same result always renders to the
same bytes. Rationals appear as ``p/q`` with a six-place decimal derived
from the exact value; unbounded ratios are ``inf``.
"""

import csv
import io
from typing import Iterable, Optional

from facility_lens.core.analysis.bounds import SweepRow
from facility_lens.core.domain.config import SearchConfig
from facility_lens.core.domain.models import Bound, Lottery, RatioReport, Violation
from facility_lens.core.domain.rational import format_both, format_decimal, format_rational
from facility_lens.core.services.ratio_service import WitnessCheck
from facility_lens.core.services.run_service import RunResult
from facility_lens.core.services.table_service import TableCell

MAX_LISTED_VIOLATIONS = 5


def render_bound(bound: Bound) -> str:
    return format_both(bound.value)


def _bound_csv(bound: Optional[Bound]) -> tuple[str, str]:
    if bound is None:
        return "", ""
    if bound.is_unbounded:
        return "inf", "inf"
    return format_rational(bound.value), format_decimal(bound.value)


def _csv(header: list[str], rows: Iterable[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_run(result: RunResult) -> str:
    lines = [
        f"mechanism: {result.spec.label()}",
        f"agents: {result.instance}",
    ]
    if result.predictions is not None:
        lines.append(f"predictions: {result.predictions}")
    if isinstance(result.outcome, Lottery):
        lines.append("lottery:")
        for placement, p in result.outcome.outcomes:
            lines.append(f"  {placement} with probability {format_both(p)}")
        prefix = "expected "
    else:
        lines.append(f"placement: {result.outcome}")
        prefix = ""
    lines += [
        f"{prefix}max-distance: {format_both(result.max_distance)}",
        f"{prefix}min-utility: {format_both(result.min_utility)}",
        f"optimum: {result.optimum.placement}",
        f"optimal max-distance: {format_both(result.optimum.opt_max_distance)}",
        f"optimal min-utility: {format_both(result.optimum.opt_min_utility)}",
        f"ratio ({result.objective.value}): "
        + ("unbounded" if result.ratio.is_unbounded else render_bound(result.ratio)),
    ]
    return "\n".join(lines) + "\n"


def render_ratio(
    report: RatioReport,
    mechanism: str,
    objective: str,
    mode: str,
    config: SearchConfig,
    witnesses: Iterable[WitnessCheck] = (),
) -> str:
    lines = [
        f"mechanism: {mechanism}",
        f"objective: {objective}",
        f"mode: {mode}",
        f"grid: 1/{config.grid_resolution}, n <= {config.max_agents}, {report.evaluated} evaluations",
        f"closed form: {render_bound(report.closed_form)}",
        f"measured: {render_bound(report.measured)}",
    ]
    if report.witness_instance is not None:
        witness = f"witness: agents {report.witness_instance}"
        if report.witness_predictions is not None:
            witness += f", predictions {report.witness_predictions}"
        witness += f", ratio {format_both(report.witness_ratio)}"
        lines.append(witness)
    for check in witnesses:
        status = "exact" if check.matches else "MISMATCH"
        lines.append(
            f"proof witness {check.witness.name}: agents {check.witness.instance}"
            f", ratio {render_bound(check.evaluated)}"
            f" (expected {render_bound(check.witness.expected)}, {status})"
        )
    lines.append("verdict: " + ("CONTRADICTION" if report.contradicts else "consistent with closed form"))
    return "\n".join(lines) + "\n"


def render_violations(mechanism: str, prop: str, violations: list[Violation]) -> str:
    lines = [f"mechanism: {mechanism}", f"property: {prop}", f"violations: {len(violations)}"]
    for v in violations[:MAX_LISTED_VIOLATIONS]:
        line = f"  agents {v.instance}"
        if v.predictions is not None:
            line += f", predictions {v.predictions}"
        if v.misreport is not None:
            line += (
                f": agent {v.agent} at {format_rational(v.instance.agents[v.agent])}"
                f" reports {format_rational(v.misreport)},"
                f" cost {format_both(v.cost_before)} -> {format_both(v.cost_after)}"
            )
        else:
            line += f": {v.detail}"
        lines.append(line)
    if len(violations) > MAX_LISTED_VIOLATIONS:
        lines.append(f"  ... {len(violations) - MAX_LISTED_VIOLATIONS} more")
    return "\n".join(lines) + "\n"


def render_sweep_csv(rows: list[SweepRow]) -> str:
    header = [
        "param",
        "consistency",
        "robustness",
        "param_decimal",
        "consistency_decimal",
        "robustness_decimal",
    ]
    out = []
    for row in rows:
        c, c_dec = _bound_csv(row.consistency)
        r, r_dec = _bound_csv(row.robustness)
        out.append([format_rational(row.param), c, r, format_decimal(row.param), c_dec, r_dec])
    return _csv(header, out)


def render_table_csv(cells: list[TableCell]) -> str:
    header = ["section", "row", "param", "objective", "mode", "stored", "computed", "status", "verification", "measured"]
    out = []
    for cell in cells:
        computed, _ = _bound_csv(cell.computed)
        measured, _ = _bound_csv(cell.report.measured if cell.report else None)
        out.append(
            [
                cell.row.section,
                cell.row.label,
                cell.row.param or "",
                cell.objective.value,
                cell.mode.value,
                cell.stored,
                computed,
                cell.status,
                cell.verification or "",
                measured,
            ]
        )
    return _csv(header, out)


def render_table_text(cells: list[TableCell]) -> str:
    lines: list[str] = []
    section = None
    by_row: dict[str, list[TableCell]] = {}
    order: list[str] = []
    for cell in cells:
        if cell.row.id not in by_row:
            by_row[cell.row.id] = []
            order.append(cell.row.id)
        by_row[cell.row.id].append(cell)
    for row_id in order:
        row_cells = by_row[row_id]
        row = row_cells[0].row
        if row.section != section:
            section = row.section
            lines.append(f"== {section} ==")
        parts = []
        for cell in row_cells:
            text = cell.stored
            if cell.status != "match":
                text += f" [{cell.status}]"
            if cell.verification:
                text += f" [{cell.verification}: {cell.report.measured.render()}]"
            parts.append(text)
        label = row.label + (f" (param {row.param})" if row.param else "")
        lines.append(
            f"{label}: max-distance ({parts[0]}, {parts[1]}) min-utility ({parts[2]}, {parts[3]})"
        )
    return "\n".join(lines) + "\n"
