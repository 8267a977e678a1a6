import click
import logfire

from facility_lens.client.cli.commands.ratio import ratio
from facility_lens.client.cli.commands.run import run
from facility_lens.client.cli.commands.sp import sp
from facility_lens.client.cli.commands.sweep import sweep
from facility_lens.client.cli.commands.table import table
from facility_lens.core.containers import Container

logfire.configure(send_to_logfire="if-token-present", console=False)
logfire.instrument_pydantic()

container = Container()
container.wire(
    modules=[
        "facility_lens.client.cli.commands.run",
        "facility_lens.client.cli.commands.ratio",
        "facility_lens.client.cli.commands.sp",
        "facility_lens.client.cli.commands.sweep",
        "facility_lens.client.cli.commands.table",
    ]
)


@click.group()
@click.version_option(version="0.1.0")
def cli():
    """facility-lens: exact workbench for facility location mechanisms with predictions."""
    try:
        Container.load_environment(container)
    except ValueError as e:
        raise click.UsageError(str(e)) from e


cli.add_command(run)
cli.add_command(sp)
cli.add_command(ratio)
cli.add_command(sweep)
cli.add_command(table)


def main():
    cli()


if __name__ == "__main__":
    main()
