import click
from dependency_injector.wiring import Provide, inject

from facility_lens.client.cli.commands.options import (
    out_option,
    search_events,
    search_options,
    usage_errors,
    write_output,
)
from facility_lens.core.containers import Container
from facility_lens.core.presentation.logging import ReportFormatter, console
from facility_lens.core.presentation.report import render_table_csv, render_table_text
from facility_lens.core.services.table_service import MISMATCH, REFUTED


@click.command()
@click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="text", show_default=True)
@click.option("--verify", is_flag=True, help="Grid-search every computed cell")
@click.option("--strict", is_flag=True, help="With --verify, exit 1 when a cell is refuted")
@search_options
@out_option
@click.pass_context
@inject
@usage_errors
def table(
    ctx,
    fmt,
    verify,
    strict,
    resolution,
    max_agents,
    workers,
    events,
    out,
    table_service=Provide[Container.table_service],
    search_config=Provide[Container.search_config.provider],
):
    """Recompute the summary table of consistency and robustness bounds."""
    config = None
    if verify:
        config = search_config(grid_resolution=resolution, max_agents=max_agents, workers=workers)
        console.print(ReportFormatter.format_phase(f"Verifying at 1/{config.grid_resolution}, n <= {config.max_agents}"))
    with search_events(events) as emitter:
        cells = table_service.reproduce(verify=verify, config=config, emitter=emitter)
    render = render_table_csv if fmt == "csv" else render_table_text
    write_output(render(cells), out)

    mismatches = [c for c in cells if c.status == MISMATCH]
    refuted = [c for c in cells if c.verification == REFUTED]
    for cell in mismatches + refuted:
        note = cell.report.measured.render() if cell.report and cell.status != MISMATCH else None
        console.print(
            ReportFormatter.format_cell(
                cell.row.label, cell.objective.value, cell.mode.value,
                cell.status if cell.status == MISMATCH else REFUTED, note,
            )
        )
    if mismatches or (strict and refuted):
        ctx.exit(1)
