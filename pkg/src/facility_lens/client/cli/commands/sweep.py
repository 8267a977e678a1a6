import click
from dependency_injector.wiring import Provide, inject

from facility_lens.client.cli.commands.options import (
    OBJECTIVE_CHOICE,
    out_option,
    usage_errors,
    write_output,
)
from facility_lens.core.containers import Container
from facility_lens.core.domain.config import Family, family_info
from facility_lens.core.domain.models import Objective
from facility_lens.core.domain.rational import parse_rational_list
from facility_lens.core.presentation.report import render_sweep_csv

PARAMETERIZED = [f.value for f in Family if family_info(f).parameterized]


@click.command()
@click.option("--mech", type=click.Choice(PARAMETERIZED), required=True, help="Parameterized family")
@click.option("--obj", type=OBJECTIVE_CHOICE, default=Objective.MIN_UTILITY.value, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=20, show_default=True, help="Evenly spaced parameter steps")
@click.option("--params", help="Explicit parameter values, comma separated (overrides --steps)")
@out_option
@inject
@usage_errors
def sweep(
    mech,
    obj,
    steps,
    params,
    out,
    sweep_service=Provide[Container.sweep_service],
):
    """Closed-form consistency/robustness trade-off curve as CSV."""
    try:
        values = parse_rational_list(params) if params else None
    except (TypeError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--params") from e
    rows = sweep_service.sweep(Family(mech), Objective(obj), values, steps)
    write_output(render_sweep_csv(rows), out)
