"""Options and parsing shared by the commands.

Domain and validation failures become click usage errors (exit code 2)
before any search starts.
"""

import functools
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import click
from pydantic import ValidationError
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn

from facility_lens.core.domain.config import (
    Family,
    MechanismSpec,
    PredictionKind,
    family_info,
)
from facility_lens.core.domain.errors import FacilityLensError
from facility_lens.core.domain.events import CallbackTransport, EventEmitter, JSONLinesTransport
from facility_lens.core.domain.models import (
    Instance,
    Objective,
    Prediction,
    PredictionPair,
    Predictions,
    SearchProgressEvent,
    SearchStartedEvent,
)
from facility_lens.core.domain.rational import parse_location, parse_rational_list
from facility_lens.core.objectives import make_instance
from facility_lens.core.presentation.logging import ReportFormatter, console

FAMILY_CHOICE = click.Choice([f.value for f in Family])
OBJECTIVE_CHOICE = click.Choice([o.value for o in Objective])


def usage_errors(fn):
    """Turn domain/pydantic errors raised by a command into usage errors."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as e:
            raise click.UsageError(_first_error(e)) from e
        except FacilityLensError as e:
            raise click.UsageError(str(e)) from e

    return wrapper


def _first_error(e: ValidationError) -> str:
    errors = e.errors()
    if not errors:
        return str(e)
    first = errors[0]
    where = ".".join(str(p) for p in first.get("loc", ()))
    return f"{where}: {first['msg']}" if where else first["msg"]


def mechanism_options(fn):
    fn = click.option(
        "--phantoms",
        help="Phantom profile for genmedian, comma separated (e.g. 1/4,1/2)",
    )(fn)
    fn = click.option(
        "--param",
        help="Family parameter gamma/delta/lambda/theta as a decimal or fraction",
    )(fn)
    fn = click.option("--mech", "mech", type=FAMILY_CHOICE, required=True, help="Mechanism family")(fn)
    return fn


def search_options(fn):
    fn = click.option("--events", is_flag=True, help="Emit search events as JSON lines on stderr")(fn)
    fn = click.option("--workers", type=click.IntRange(min=1), help="Worker processes (env: FM_WORKERS)")(fn)
    fn = click.option(
        "--max-agents", type=click.IntRange(min=1), default=4, show_default=True, help="Largest instance size"
    )(fn)
    fn = click.option(
        "--res",
        "resolution",
        type=click.IntRange(min=2),
        envvar="FM_RESOLUTION",
        help="Grid resolution; step 1/res (env: FM_RESOLUTION, default 20)",
    )(fn)
    return fn


def out_option(fn):
    return click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        help="Also write the report to this file",
    )(fn)


def build_spec(mech: str, param: Optional[str], phantoms: Optional[str]) -> MechanismSpec:
    try:
        values = None if phantoms is None else tuple(parse_rational_list(phantoms))
        return MechanismSpec(family=mech, param=param, phantoms=values)
    except ValidationError as e:
        raise click.BadParameter(_first_error(e), param_hint="--mech/--param/--phantoms") from e
    except (FacilityLensError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--param/--phantoms") from e


def parse_agents(text: str) -> Instance:
    try:
        return make_instance(parse_rational_list(text))
    except (FacilityLensError, ValueError, TypeError) as e:
        raise click.BadParameter(str(e), param_hint="--agents") from e


def parse_predictions(text: Optional[str], kind: PredictionKind) -> Optional[Predictions]:
    if kind is PredictionKind.NONE:
        if text:
            raise click.BadParameter("this mechanism takes no predictions", param_hint="--pred")
        return None
    if not text:
        raise click.BadParameter(f"a {kind.value} prediction is required", param_hint="--pred")
    try:
        values = [parse_location(v) for v in text.split(",") if v.strip()]
    except (FacilityLensError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--pred") from e
    expected = 1 if kind is PredictionKind.SINGLE else 2
    if len(values) != expected:
        raise click.BadParameter(f"expected {expected} value(s), got {len(values)}", param_hint="--pred")
    if kind is PredictionKind.SINGLE:
        return Prediction(values[0])
    return PredictionPair.of(values[0], values[1])


def prediction_kind(spec: MechanismSpec) -> PredictionKind:
    return family_info(spec.family).predictions


def write_output(text: str, out: Optional[str]) -> None:
    """Print ``text`` on stdout and, with ``--out``, to the file as well."""
    click.echo(text, nl=False)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        console.print(ReportFormatter.format_output_written(str(path)))


@contextmanager
def search_events(events: bool) -> Iterator[EventEmitter]:
    """JSON lines on stderr with ``--events``; otherwise a transient progress bar."""
    emitter = EventEmitter()
    if events:
        emitter.add_transport(JSONLinesTransport())
        yield emitter
        return
    progress = Progress(
        TextColumn("{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        console=console,
        transient=True,
    )
    tasks: dict[str, int] = {}

    def on_event(event):
        if isinstance(event, SearchStartedEvent):
            tasks[event.mechanism] = progress.add_task(f"{event.mechanism} {event.mode}", total=event.total)
        elif isinstance(event, SearchProgressEvent) and event.mechanism in tasks:
            progress.update(tasks[event.mechanism], completed=event.done)

    emitter.add_transport(CallbackTransport(on_event))
    with progress:
        yield emitter
