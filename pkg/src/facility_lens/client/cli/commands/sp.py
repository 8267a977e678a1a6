import click
from dependency_injector.wiring import Provide, inject

from facility_lens.client.cli.commands.options import (
    build_spec,
    mechanism_options,
    out_option,
    search_events,
    search_options,
    usage_errors,
    write_output,
)
from facility_lens.core.containers import Container
from facility_lens.core.presentation.logging import ReportFormatter, console
from facility_lens.core.presentation.report import render_violations
from facility_lens.core.services.sp_service import Property


@click.command()
@mechanism_options
@search_options
@click.option(
    "--property",
    "prop",
    type=click.Choice([p.value for p in Property]),
    default=Property.STRATEGYPROOFNESS.value,
    show_default=True,
)
@click.option(
    "--pred-res",
    type=click.IntRange(min=1),
    help="Prediction grid resolution (env: FM_SP_PREDICTION_RESOLUTION, default 4)",
)
@out_option
@click.pass_context
@inject
@usage_errors
def sp(
    ctx,
    mech,
    param,
    phantoms,
    resolution,
    max_agents,
    workers,
    events,
    prop,
    pred_res,
    out,
    property_service=Provide[Container.property_service],
    search_config=Provide[Container.search_config.provider],
):
    """Check strategy-proofness (or unanimity/Pareto) exhaustively on the grid."""
    spec = build_spec(mech, param, phantoms)
    config = search_config(
        grid_resolution=resolution,
        max_agents=max_agents,
        workers=workers,
        prediction_resolution=pred_res,
    )
    console.print(ReportFormatter.get_intro_panel("sp", spec.label(), prop))
    with search_events(events) as emitter:
        violations = property_service.check(spec, config, Property(prop), emitter)
    write_output(render_violations(spec.label(), prop, violations), out)
    console.print(ReportFormatter.format_verdict(not violations, f"{len(violations)} violation(s)"))
    if violations:
        ctx.exit(1)
