import click

from _spsfeedback_cli import console
from _spsfeedback_cli import logging_options
from _spsfeedback_cli import render
from _spsfeedback_cli.cmds.models import Command
from _spsfeedback_cli.cmds.models import OutputFormat
from _spsfeedback_cli.cmds.options.model_options import config_option
from _spsfeedback_cli.cmds.options.model_options import mode_option
from _spsfeedback_cli.cmds.options.model_options import model_options
from _spsfeedback_cli.cmds.options.model_options import solver_options
from _spsfeedback_cli.cmds.options.output_options import output_options
from _spsfeedback_cli.cmds.utils import companion
from _spsfeedback_cli.cmds.utils import load_run_config
from _spsfeedback_cli.cmds.utils import simulator_for
from _spsfeedback_sdk.observables.stats import trajectory_rows
from _spsfeedback_sdk.observables.stats import TRAJECTORY_COLUMNS
from _spsfeedback_sdk.utils import dict_rows


@click.command()
@config_option
@mode_option
@model_options
@click.option("--ts", "t_switch", type=float, default=None, help="Stopping time T_s in units of 1/κ.")
@click.option("--t-end", type=float, default=None, help="End of the sampled trajectory. Defaults to T_s + 50.")
@click.option("--samples", type=int, default=None, help="Number of trajectory samples. Defaults to 201.")
@click.option(
    "--method",
    type=click.Choice(["spectral", "rk4"]),
    default=None,
    help="Propagator for the trajectory. Defaults to 'spectral' with automatic Runge-Kutta fallback.",
)
@solver_options
@output_options
@logging_options
def simulate(config_file, mode, omega, g, gamma, nu1, t_switch, t_end, samples, method, dt, **kwargs):
    """
    Pump until T_s, then let the source relax.

    Emits the trajectory (time, p0, p1, p2plus, pX, pcontrol_on, trace_error) as CSV and a JSON summary with the
    emission statistics at T_s and asymptotically. With --out, both files are written: the CSV at the --out path
    (or next to it when --format json) and the summary alongside.
    """
    config = load_run_config(
        Command.simulate,
        config_file,
        mode=mode,
        omega=omega,
        g=g,
        gamma=gamma,
        nu1=nu1,
        t_switch=t_switch,
        t_end=t_end,
        samples=samples,
        method=method,
        dt=dt,
        format=kwargs.pop("format_"),
        **kwargs,
    )
    sim = simulator_for(config)
    result = sim.propagation.simulate(
        config.params,
        mode=config.resolved_mode,
        t_switch=config.t_switch,
        t_end=config.t_end,
        samples=config.samples,
        method=config.method,
    )
    rows = dict_rows(trajectory_rows(result.trajectory))
    document = render.summary(
        params=result.params,
        result={
            "mode": result.mode,
            "t_switch": result.t_switch,
            "at_switch": result.at_switch,
            "asymptotic": result.asymptotic,
            "excited_at_switch": result.excited_at_switch,
            "control_on_at_switch": result.control_on_at_switch,
        },
        diagnostics=result.diagnostics,
    )

    if config.out is None:
        if OutputFormat(config.format) == OutputFormat.json:
            render.json_document(document)
        else:
            render.csv(rows, TRAJECTORY_COLUMNS)
        return

    if OutputFormat(config.format) == OutputFormat.json:
        summary_path, trajectory_path = config.out, companion(config.out, ".csv")
    else:
        trajectory_path, summary_path = config.out, companion(config.out, ".json")
    render.write_csv_file(trajectory_path, rows, TRAJECTORY_COLUMNS)
    render.write_json_file(summary_path, document)
    console.print(f"Wrote {trajectory_path} and {summary_path}", highlight=False)
