from typing import Tuple

from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.figures.jobs import anchor_epsilon
from _spsfeedback_sdk.figures.jobs import figure3
from _spsfeedback_sdk.figures.jobs import figure4
from _spsfeedback_sdk.figures.jobs import figure5
from _spsfeedback_sdk.figures.jobs import figure_params
from _spsfeedback_sdk.figures.jobs import figure_report
from _spsfeedback_sdk.figures.jobs import FIGURES
from _spsfeedback_sdk.figures.models import FigureReport
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.models import OptimizationConfig

# placeholder cap replaced by calibration before any figure-4/5 search runs
UNCALIBRATED_EPSILON = 0.5


class FiguresClient:
    """
    Reproduce the stopping-time curve and the two p(1) sweeps and compare them with the published coordinates.

    Usage example:

        >>> sim = spsfeedback.Simulator(workers=8)
        >>> rows, report = sim.figures.run(5)
        >>> report.checks
    """

    def __init__(self, parent):
        self._parent = parent

    def run(
        self, which: int, config: OptimizationConfig = None, params: ModelParams = None
    ) -> Tuple[object, FigureReport]:
        """
        Run figure `which` (3, 4 or 5).

        Figure 3 returns its `Curves`; figures 4 and 5 return `SweepPoint` rows. When `config` is omitted the cap ε
        is calibrated against the open-loop anchor first.
        """
        if which not in FIGURES:
            raise InvalidArgumentError(f"unknown figure {which}; expected one of {FIGURES}.", value=which)
        options = self._parent.options
        params = params or self._parent.default_params()
        if which == 3:
            ts_grid = None if config is None else config.ts_grid
            curves = figure3(ts_grid, params, options)
            return curves, figure_report(3, curves)
        if config is None:
            template = OptimizationConfig(epsilon=UNCALIBRATED_EPSILON)
            config = template.with_epsilon(self.calibrate(template, params, which))
        workers = self._parent.settings.workers
        job = figure4 if which == 4 else figure5
        rows = job(config, params, options, workers)
        return rows, figure_report(which, rows, epsilon=config.epsilon)

    def calibrate(self, config: OptimizationConfig, params: ModelParams = None, which: int = 4) -> float:
        """
        ε at which the open-loop optimum at Ω = g = 0.1 reproduces the published anchor value, searched with the
        grids of `config` at the rates figure `which` runs at.
        """
        params = figure_params(which, params or self._parent.default_params())
        return anchor_epsilon(config, params, self._parent.options)
