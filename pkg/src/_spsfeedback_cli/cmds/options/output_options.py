import click

from _spsfeedback_cli.cmds.models import OutputFormat

format_option = click.option(
    "--format",
    "-f",
    "format_",
    type=click.Choice([f.value for f in OutputFormat]),
    default=None,
    help="Format of the emitted data: 'csv' or 'json'. Defaults to the [run] format in the config file, else 'csv'.",
)

out_option = click.option(
    "--out",
    "-o",
    default=None,
    type=click.Path(dir_okay=False, writable=True),
    help="File to write results to. Companion files (JSON summary, figure report) are written next to it. "
    "Without --out, data is written to stdout.",
)


def output_options(f):
    f = format_option(f)
    f = out_option(f)
    return f
