import click

from _spsfeedback_cli import console
from _spsfeedback_cli import logging_options
from _spsfeedback_cli import render
from _spsfeedback_cli.cmds.models import Command
from _spsfeedback_cli.cmds.models import OutputFormat
from _spsfeedback_cli.cmds.options.model_options import config_option
from _spsfeedback_cli.cmds.options.model_options import epsilon_option
from _spsfeedback_cli.cmds.options.model_options import solver_options
from _spsfeedback_cli.cmds.options.model_options import workers_option
from _spsfeedback_cli.cmds.options.output_options import output_options
from _spsfeedback_cli.cmds.utils import companion
from _spsfeedback_cli.cmds.utils import load_run_config
from _spsfeedback_cli.cmds.utils import simulator_for
from _spsfeedback_cli.cmds.utils import SWEEP_COLUMNS
from _spsfeedback_cli.cmds.utils import sweep_rows
from _spsfeedback_sdk.figures.client import UNCALIBRATED_EPSILON
from _spsfeedback_sdk.figures.jobs import figure3_rows
from _spsfeedback_sdk.figures.models import FigureReport
from _spsfeedback_sdk.utils import dict_rows

FIGURE3_COLUMNS = ["T_s", "p0", "p1", "p2plus"]


def _render_report(report: FigureReport):
    headers = ["check", "passed"]
    rows = [{"check": name, "passed": str(passed)} for name, passed in report.checks.items()]
    if report.points:
        rows.append({"check": f"max deviation ≤ {report.tolerance:g}", "passed": str(report.within_tolerance)})
    render.table(rows, headers, title=f"Figure {report.figure}")


@click.command()
@config_option
@click.option(
    "--figure",
    "-n",
    "figure",
    type=click.IntRange(3, 5),
    default=None,
    help="Figure to reproduce: 3 (p0, p1, p2plus versus T_s), 4 (optimum versus Ω) or 5 (optimum versus g).",
)
@epsilon_option
@workers_option
@solver_options
@output_options
@logging_options
def figure(config_file, format_, **overrides):
    """
    Reproduce a figure's data and compare it with the published coordinates.

    Figures 4 and 5 calibrate ε against the open-loop anchor (Ω = g = 0.1) unless --epsilon is given. With --out,
    the comparison report is written next to the data as `<name>.report.json`; otherwise it is printed to stderr.
    """
    config = load_run_config(Command.figure, config_file, format=format_, **overrides)
    if config.figure is None:
        raise click.UsageError("Missing option '--figure'.")
    sim = simulator_for(config)
    search = config.optimization_config(epsilon=config.epsilon or UNCALIBRATED_EPSILON)
    if config.figure != 3 and config.epsilon is None:
        search = search.with_epsilon(sim.figures.calibrate(search, config.params, config.figure))

    data, report = sim.figures.run(config.figure, config=search, params=config.params)
    if config.figure == 3:
        rows, headers = dict_rows(figure3_rows(data)), FIGURE3_COLUMNS
    else:
        rows, headers = sweep_rows(data), SWEEP_COLUMNS
    document = render.summary(params=config.params, result=rows, diagnostics=report)

    if OutputFormat(config.format) == OutputFormat.json:
        if config.out:
            render.write_json_file(config.out, document)
        else:
            render.json_document(document)
    elif config.out:
        render.write_csv_file(config.out, rows, headers)
    else:
        render.csv(rows, headers)

    if config.out:
        report_path = companion(config.out, ".report.json")
        render.write_json_file(report_path, render.summary(report=report))
        console.print(f"Wrote {config.out} and {report_path}", highlight=False)
    else:
        _render_report(report)
