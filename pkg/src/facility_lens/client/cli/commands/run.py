import click
from dependency_injector.wiring import Provide, inject

from facility_lens.client.cli.commands.options import (
    OBJECTIVE_CHOICE,
    build_spec,
    mechanism_options,
    out_option,
    parse_agents,
    parse_predictions,
    prediction_kind,
    usage_errors,
    write_output,
)
from facility_lens.core.containers import Container
from facility_lens.core.domain.models import Objective
from facility_lens.core.presentation.report import render_run


@click.command()
@mechanism_options
@click.option("--agents", required=True, help="Agent reports, comma separated (e.g. 0,1/2,0.9)")
@click.option("--pred", help="Prediction(s): one value, or two for two-facility families")
@click.option("--obj", type=OBJECTIVE_CHOICE, default=Objective.MAX_DISTANCE.value, show_default=True)
@out_option
@inject
@usage_errors
def run(
    mech,
    param,
    phantoms,
    agents,
    pred,
    obj,
    out,
    run_service=Provide[Container.run_service],
):
    """Evaluate a mechanism on one instance."""
    spec = build_spec(mech, param, phantoms)
    instance = parse_agents(agents)
    predictions = parse_predictions(pred, prediction_kind(spec))
    result = run_service.run(spec, instance, predictions, Objective(obj))
    write_output(render_run(result), out)
