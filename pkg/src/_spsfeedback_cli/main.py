import os
import site
import sys

import click

from _spsfeedback_cli import console
from _spsfeedback_cli import logging_options
from _spsfeedback_cli.cmds.figure import figure
from _spsfeedback_cli.cmds.optimize import optimize
from _spsfeedback_cli.cmds.optimize import sweep
from _spsfeedback_cli.cmds.simulate import simulate
from _spsfeedback_cli.core import ExceptionHandlingGroup
from _spsfeedback_sdk.__version__ import __version__


@click.group(
    cls=ExceptionHandlingGroup,
    invoke_without_command=True,
    no_args_is_help=True,
    help=f"Quantum-dot single-photon source simulator with threshold feedback. Version {__version__}",
)
@click.option("--version", is_flag=True)
@click.option(
    "--python",
    is_flag=True,
    help="Print path to the python interpreter env that `spsfeedback` is installed in.",
)
@click.option(
    "--script-dir",
    is_flag=True,
    help="Print the directory the `spsfeedback` script was installed in (for adding to your PATH if needed).",
)
@logging_options
def spsfeedback(version, python, script_dir):
    if version:
        console.print(__version__, highlight=False)
    if python:
        console.print(sys.executable, highlight=False)
        sys.exit(0)
    if script_dir:
        for prefix in (site.PREFIXES[0], site.USER_BASE):
            for root, _dirs, files in os.walk(prefix):
                if "spsfeedback" in files or "spsfeedback.exe" in files:
                    console.print(root, highlight=False)
                    sys.exit(0)


spsfeedback.add_command(simulate)
spsfeedback.add_command(sweep)
spsfeedback.add_command(optimize)
spsfeedback.add_command(figure)

if __name__ == "__main__":
    spsfeedback()
