import logging
import traceback
from textwrap import indent

from _spsfeedback_sdk.core.settings import SimulatorSettings
from _spsfeedback_sdk.figures.client import FiguresClient
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.client import OptimizationClient
from _spsfeedback_sdk.propagate.client import PropagationClient
from _spsfeedback_sdk.propagate.models import SolverOptions


class Simulator:
    """
    Entry point to the quantum-dot single-photon source model.

    All keyword arguments are forwarded to [`SimulatorSettings`](../settings); anything not passed is loaded from
    `SPSFEEDBACK_*` environment variables or an `.env` file.

    Usage example:

        >>> import spsfeedback
        >>> sim = spsfeedback.Simulator(rk4_dt=5e-4, workers=4)
        >>> sim.propagation.simulate(spsfeedback.models.ModelParams(), t_switch=12)

    """

    def __init__(self, **settings_kwargs):
        self._settings = SimulatorSettings(**settings_kwargs)
        self._propagation = PropagationClient(self)
        self._optimization = OptimizationClient(self)
        self._figures = FiguresClient(self)

    @property
    def settings(self) -> SimulatorSettings:
        """
        Property returning the [`SimulatorSettings`](../settings) object that contains the configuration for this
        simulator. Changes are validated on assignment and apply to the next call.
        """
        return self._settings

    @property
    def options(self) -> SolverOptions:
        """The numerical settings as a `SolverOptions` snapshot."""
        return self._settings.solver_options()

    def default_params(self, **overrides) -> ModelParams:
        """`ModelParams` with Δt and η taken from the settings."""
        values = {"dt_window": self._settings.dt_window, "eta": self._settings.eta}
        values.update(overrides)
        return ModelParams(**values)

    @property
    def propagation(self) -> PropagationClient:
        """
        Property returning a `PropagationClient` for two-phase simulations.

        Usage:

            >>> sim.propagation.simulate(params, mode="threshold", t_switch=20)
        """
        return self._propagation

    @property
    def optimization(self) -> OptimizationClient:
        """
        Property returning an `OptimizationClient` for stopping-time optimizations and sweeps.

        Usage:

            >>> sim.optimization.optimal_deterministic(params, OptimizationConfig(epsilon=0.01))
        """
        return self._optimization

    @property
    def figures(self) -> FiguresClient:
        """
        Property returning a `FiguresClient` for figure reproduction jobs.

        Usage:

            >>> rows, report = sim.figures.run(4)
        """
        return self._figures

    def _log_error(self, err, invocation_str=None):
        message = str(err) if err else None
        if message:
            if invocation_str:
                message = f"{message}. Failed while running: {invocation_str}"
            self._settings.logger.error(message)

    def _log_verbose_error(self, invocation_str=None, exc=None):
        """For logging traces, invocation strings, and exception info."""
        message = "".join(traceback.format_exception(type(exc), exc, exc.__traceback__)) if exc else ""
        if invocation_str:
            message = f"Failed while running {invocation_str}:\n{indent(message, '  ')}"
        self._settings.logger.log(logging.ERROR, message.rstrip())
