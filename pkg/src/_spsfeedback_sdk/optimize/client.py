from typing import List
from typing import Sequence

from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.curves import p_curves
from _spsfeedback_sdk.optimize.models import Curves
from _spsfeedback_sdk.optimize.models import OptimizationConfig
from _spsfeedback_sdk.optimize.models import OptResult
from _spsfeedback_sdk.optimize.models import SweepPoint
from _spsfeedback_sdk.optimize.search import calibrate_epsilon
from _spsfeedback_sdk.optimize.search import optimal_deterministic
from _spsfeedback_sdk.optimize.search import optimal_threshold
from _spsfeedback_sdk.optimize.sweeps import sweep_coupling
from _spsfeedback_sdk.optimize.sweeps import sweep_pumping


class OptimizationClient:
    """
    Stopping-time optimizations with the parent `Simulator`'s numerical settings and worker count.

    Usage example:

        >>> import spsfeedback
        >>> from spsfeedback.models import ModelParams, OptimizationConfig
        >>> sim = spsfeedback.Simulator(workers=4)
        >>> sim.optimization.optimal_threshold(ModelParams(omega=0.05), OptimizationConfig(epsilon=0.01))
    """

    def __init__(self, parent):
        self._parent = parent

    @property
    def _workers(self) -> int:
        return self._parent.settings.workers

    def p_curves(self, params: ModelParams, mode: Mode, ts_grid: Sequence[float]) -> Curves:
        return p_curves(params, mode, ts_grid, self._parent.options)

    def optimal_deterministic(self, params: ModelParams, config: OptimizationConfig) -> OptResult:
        return optimal_deterministic(params, config, self._parent.options)

    def optimal_threshold(self, params: ModelParams, config: OptimizationConfig) -> OptResult:
        return optimal_threshold(params, config, self._parent.options, self._workers)

    def optimize(self, params: ModelParams, mode: Mode, config: OptimizationConfig) -> OptResult:
        """Dispatch to `optimal_deterministic` or `optimal_threshold` by `mode`."""
        if Mode(mode) == Mode.DETERMINISTIC:
            return self.optimal_deterministic(params, config)
        return self.optimal_threshold(params, config)

    def calibrate_epsilon(self, params: ModelParams, target_p1: float, config: OptimizationConfig) -> float:
        return calibrate_epsilon(params, target_p1, config, self._parent.options)

    def sweep_pumping(
        self, omega_grid: Sequence[float], g: float, config: OptimizationConfig, params: ModelParams = None
    ) -> List[SweepPoint]:
        return sweep_pumping(omega_grid, g, config, params, self._parent.options, self._workers)

    def sweep_coupling(
        self, g_grid: Sequence[float], config: OptimizationConfig, params: ModelParams = None
    ) -> List[SweepPoint]:
        return sweep_coupling(g_grid, config, params, self._parent.options, self._workers)
