import click
from dependency_injector.wiring import Provide, inject

from facility_lens.client.cli.commands.options import (
    OBJECTIVE_CHOICE,
    build_spec,
    mechanism_options,
    out_option,
    search_events,
    search_options,
    usage_errors,
    write_output,
)
from facility_lens.core.analysis.search import SearchMode
from facility_lens.core.containers import Container
from facility_lens.core.domain.models import Objective
from facility_lens.core.domain.rational import format_rational
from facility_lens.core.presentation.logging import ReportFormatter, console
from facility_lens.core.presentation.report import render_ratio


@click.command()
@mechanism_options
@click.option("--obj", type=OBJECTIVE_CHOICE, required=True)
@click.option("--mode", type=click.Choice([m.value for m in SearchMode]), required=True)
@search_options
@click.option("--tolerance", default="0", show_default=True, help="Slack allowed above the closed form")
@click.option("--witness", is_flag=True, help="Also evaluate the exact proof witnesses for this cell")
@out_option
@click.pass_context
@inject
@usage_errors
def ratio(
    ctx,
    mech,
    param,
    phantoms,
    obj,
    mode,
    resolution,
    max_agents,
    workers,
    events,
    tolerance,
    witness,
    out,
    ratio_service=Provide[Container.ratio_service],
    search_config=Provide[Container.search_config.provider],
):
    """Measure worst-case consistency or robustness on the grid."""
    spec = build_spec(mech, param, phantoms)
    objective, search_mode = Objective(obj), SearchMode(mode)
    config = search_config(
        grid_resolution=resolution, max_agents=max_agents, workers=workers, tolerance=tolerance
    )
    console.print(ReportFormatter.get_intro_panel("ratio", spec.label(), f"{objective.value}, {search_mode.value}"))
    with search_events(events) as emitter:
        report = ratio_service.measure(spec, objective, search_mode, config, emitter)
    checks = ratio_service.witnesses(spec, objective, search_mode) if witness else []
    write_output(render_ratio(report, spec.label(), objective.value, search_mode.value, config, checks), out)

    if report.measured.is_unbounded and report.witness_ratio is not None:
        console.print(
            ReportFormatter.format_warning(
                f"worst ratio {format_rational(report.witness_ratio)} is above the divergence threshold "
                f"{format_rational(config.divergence_threshold)}; reported as unbounded"
            )
        )
    for check in checks:
        if not check.matches:
            console.print(
                ReportFormatter.format_error(
                    f"witness {check.witness.name} gives {check.evaluated.render()}, "
                    f"expected {check.witness.expected.render()}"
                )
            )

    failed = report.contradicts or any(not c.matches for c in checks)
    if report.contradicts:
        console.print(ReportFormatter.format_verdict(False, "measured ratio exceeds the closed form"))
    if failed:
        ctx.exit(1)
