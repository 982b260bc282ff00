import click

from _spsfeedback_cli import logging_options
from _spsfeedback_cli import render
from _spsfeedback_cli.cmds.models import Command
from _spsfeedback_cli.cmds.models import SweepVariable
from _spsfeedback_cli.cmds.options.model_options import config_option
from _spsfeedback_cli.cmds.options.model_options import epsilon_option
from _spsfeedback_cli.cmds.options.model_options import mode_option
from _spsfeedback_cli.cmds.options.model_options import model_options
from _spsfeedback_cli.cmds.options.model_options import solver_options
from _spsfeedback_cli.cmds.options.model_options import workers_option
from _spsfeedback_cli.cmds.options.output_options import output_options
from _spsfeedback_cli.cmds.utils import emit
from _spsfeedback_cli.cmds.utils import load_run_config
from _spsfeedback_cli.cmds.utils import result_rows
from _spsfeedback_cli.cmds.utils import RESULT_COLUMNS
from _spsfeedback_cli.cmds.utils import simulator_for
from _spsfeedback_cli.cmds.utils import SWEEP_COLUMNS
from _spsfeedback_cli.cmds.utils import sweep_rows
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.figures.golden import FIG5_G as DEFAULT_G_GRID
from _spsfeedback_sdk.optimize.models import SweepPoint
from _spsfeedback_sdk.optimize.sweeps import DETERMINISTIC_CURVE


def _load(command, config_file, format_, **overrides):
    return load_run_config(command, config_file, format=format_, **overrides)


@click.command()
@config_option
@mode_option
@epsilon_option
@model_options
@workers_option
@solver_options
@output_options
@logging_options
def optimize(config_file, format_, **overrides):
    """
    Maximize p(1) over the stopping time subject to p(2+) ≤ ε at a single (Ω, g).

    In threshold mode ν₁ and γ are searched as well; --gamma and --nu1 pin them to a single value.
    """
    config = _load(Command.optimize, config_file, format_, **overrides)
    sim = simulator_for(config)
    search = config.optimization_config()
    result = sim.optimization.optimize(config.params, config.resolved_mode, search)
    emit(
        config,
        result_rows([result]),
        RESULT_COLUMNS,
        render.summary(params=config.params, result=result, diagnostics={"epsilon": search.epsilon}),
    )


@click.command()
@config_option
@mode_option
@epsilon_option
@model_options
@click.option(
    "--variable",
    type=click.Choice([v.value for v in SweepVariable]),
    default=None,
    help="Swept parameter: pump rate 'omega' (grid from omega_grid) or coupling 'g' (grid from g_grid, defaulting to "
    "0.02, 0.03, ..., 0.1).",
)
@workers_option
@solver_options
@output_options
@logging_options
def sweep(config_file, format_, **overrides):
    """
    Optimize p(1) along a grid of pump rates or couplings, one row per grid point and curve, in ascending order.

    Without --mode both the open-loop and the feedback curves are emitted; --mode det or --mode threshold keeps
    one family. A g sweep optimizes Ω over omega_grid at every point.
    """
    config = _load(Command.sweep, config_file, format_, **overrides)
    sim = simulator_for(config)
    search = config.optimization_config()
    variable = SweepVariable(config.variable)
    if variable == SweepVariable.omega:
        grid = sorted(config.omega_grid or search.omega_grid.tolist())
    else:
        grid = sorted(config.g_grid or DEFAULT_G_GRID)

    open_loop_only = config.mode is not None and Mode(config.mode) == Mode.DETERMINISTIC
    if open_loop_only and variable == SweepVariable.omega:
        points = []
        for value in grid:
            point = config.params.copy(update={variable.value: float(value)})
            result = sim.optimization.optimal_deterministic(point, search)
            points.append(SweepPoint(curve=DETERMINISTIC_CURVE, variable=variable.value, value=value, result=result))
    elif variable == SweepVariable.omega:
        points = sim.optimization.sweep_pumping(grid, config.params.g, search, config.params)
    else:
        points = sim.optimization.sweep_coupling(grid, search, config.params)
    if open_loop_only:
        points = [point for point in points if point.curve == DETERMINISTIC_CURVE]
    elif config.mode is not None:
        points = [point for point in points if point.curve != DETERMINISTIC_CURVE]

    emit(
        config,
        sweep_rows(points),
        SWEEP_COLUMNS,
        render.summary(params=config.params, result=points, diagnostics={"epsilon": search.epsilon}),
    )
