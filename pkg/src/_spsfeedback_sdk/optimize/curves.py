"""
Asymptotic emission probabilities as functions of the stopping time, and the two characteristic times of those
curves: t_ε, where p(2+) reaches the cap, and t_m, where p(1) peaks.
"""
import logging
import math
from typing import Sequence

import numpy as np
from scipy.optimize import bisect
from scipy.optimize import minimize_scalar

from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.exceptions import PositivityViolationError
from _spsfeedback_sdk.generator.liouvillian import build_deterministic
from _spsfeedback_sdk.generator.liouvillian import build_feedback
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.observables.models import PROBABILITY_TOLERANCE
from _spsfeedback_sdk.optimize.models import Curves
from _spsfeedback_sdk.propagate.evolution import asymptotic_readout
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SolverOptions
from _spsfeedback_sdk.propagate.rk4 import rk4_step_matrix
from _spsfeedback_sdk.propagate.spectral import coefficients
from _spsfeedback_sdk.propagate.spectral import spectral_decompose

_logger = logging.getLogger("spsfeedback.optimize")

# p1 differences below this are treated as flat when checking unimodality
UNIMODAL_NOISE = 1e-12
FINE_GRID_POINTS = 2001
# eigenvector round-off on the spectral curves, clipped away below this
SPECTRAL_NOISE = 1e-7


class SpectralCurve:
    """p_k(T) = Σ_j (r_k · v_j) c_j e^{λ_j T}, one decomposition serving every T."""

    def __init__(self, weights: np.ndarray, coefficients: np.ndarray, eigenvalues: np.ndarray):
        self.weights = weights * coefficients[None, :]
        self.eigenvalues = eigenvalues

    def __call__(self, ts: np.ndarray) -> np.ndarray:
        return (self.weights @ np.exp(np.outer(self.eigenvalues, ts))).real


class SteppedCurve:
    """RK4 stand-in for defective generators: states are stored on a grid and stepped forward to off-grid times."""

    def __init__(self, generator: LiouvillianMatrix, start: np.ndarray, readout: np.ndarray, grid, dt: float):
        self.generator = generator
        self.readout = readout
        self.dt = dt
        self.grid = np.asarray(grid, dtype=float)
        self._steps = {}
        states = []
        current, state = 0.0, start
        for t in self.grid:
            state = self._advance(state, t - current)
            current = t
            states.append(state)
        self.states = np.array(states)

    def _advance(self, state: np.ndarray, span: float) -> np.ndarray:
        if span <= 0:
            return state
        n = max(1, math.ceil(span / self.dt - 1e-9))
        h = span / n
        if h not in self._steps:
            self._steps[h] = rk4_step_matrix(self.generator, h)
        for _ in range(n):
            state = self._steps[h] @ state
        return state

    def __call__(self, ts: np.ndarray) -> np.ndarray:
        columns = []
        for t in ts:
            i = max(int(np.searchsorted(self.grid, t, side="right")) - 1, 0)
            state = self._advance(self.states[i], t - self.grid[i])
            columns.append(self.readout @ state)
        return np.array(columns).T.real


def _generators(params: ModelParams, mode: Mode, options: SolverOptions):
    restrict = options.use_sector_reduction
    if Mode(mode) == Mode.DETERMINISTIC:
        on = build_deterministic(params, Pumping.ON, restrict=restrict)
        off = build_deterministic(params, Pumping.OFF, restrict=restrict)
    else:
        for message in params.regime_warnings():
            _logger.debug(f"ν₁={params.nu1:g}, γ={params.gamma_meas:g}: {message}")
        keep = options.keep_measurement_after_stop
        on = build_feedback(params, Pumping.ON, restrict=restrict, keep_measurement_after_stop=keep, warn=False)
        off = build_feedback(params, Pumping.OFF, restrict=restrict, keep_measurement_after_stop=keep, warn=False)
    return on, off


def _check_range(values: np.ndarray, tolerance: float = PROBABILITY_TOLERANCE):
    low, high = float(values.min()), float(values.max())
    if low < -tolerance or high > 1 + tolerance:
        raise PositivityViolationError(
            f"asymptotic probabilities span [{low:.3e}, {high:.12g}], outside [0, 1].",
            value=low if low < 0 else high,
        )


def p_curves(
    params: ModelParams,
    mode: Mode,
    ts_grid: Sequence[float],
    options: SolverOptions = None,
) -> Curves:
    """
    Asymptotic p(0), p(1), p(2+) after stopping the pump at each T_s in `ts_grid`.

    The pumping-on generator is decomposed once and the pumping-off asymptote is read through fixed linear
    functionals, so the whole grid costs one eigendecomposition and one SVD. Round-off below `SPECTRAL_NOISE` is
    clipped; a defective-suspect decomposition, or values further outside [0, 1], switch to RK4 stepping between
    grid points.
    """
    options = options or SolverOptions()
    ts_grid = np.asarray(ts_grid, dtype=float)
    on, off = _generators(params, mode, options)
    rho0 = DensityState.initial(on.space)
    readout = asymptotic_readout(off, options)

    method, evaluator, values = Method.SPECTRAL, None, None
    decomp = spectral_decompose(on, options.condition_limit, options.stable_tolerance)
    if not decomp.defective:
        evaluator = SpectralCurve(readout @ decomp.vectors, coefficients(decomp, rho0), decomp.eigenvalues)
        values = evaluator(ts_grid)
        try:
            _check_range(values, SPECTRAL_NOISE)
            values = np.clip(values, 0.0, 1.0)
        except NumericError as err:
            _logger.debug(f"spectral stopping-time curves rejected ({err}); stepping with RK4 instead.")
            evaluator = None
    if evaluator is None:
        method = Method.RK4
        evaluator = SteppedCurve(on, on.to_local(rho0.vec), readout, ts_grid, options.rk4_dt)
        values = evaluator(ts_grid)
        _check_range(values)

    curves = Curves(
        params=params,
        mode=mode,
        method=method,
        ts=ts_grid,
        p0=values[0],
        p1=values[1],
        p2plus=values[2:].sum(axis=0),
    )
    return curves.attach(evaluator)


def find_t_epsilon(curves: Curves, epsilon: float, tolerance: float = 1e-4) -> float:
    """
    First stopping time at which p(2+) reaches `epsilon`, refined by bisection to `tolerance`.

    The returned time errs on the admissible side (p(2+) ≤ ε there). Returns `math.inf` when p(2+) stays below
    `epsilon` on the whole grid.
    """
    above = np.flatnonzero(curves.p2plus >= epsilon)
    if not above.size:
        return math.inf
    i = int(above[0])
    if i == 0:
        return float(curves.ts[0])
    lo, hi = float(curves.ts[i - 1]), float(curves.ts[i])

    def excess(t):
        return curves.evaluate(t)[2] - epsilon

    if excess(lo) >= 0 or excess(hi) < 0:
        # the evaluator and the stored grid disagree at round-off level
        return lo
    root = bisect(excess, lo, hi, xtol=tolerance / 2)
    return max(lo, root - tolerance / 2)


def _is_unimodal(values: np.ndarray) -> bool:
    steps = np.diff(values)
    falling = np.flatnonzero(steps < -UNIMODAL_NOISE)
    if not falling.size:
        return True
    return not np.any(steps[falling[0] :] > UNIMODAL_NOISE)


def find_t_max(curves: Curves, tolerance: float = 1e-4) -> float:
    """
    Stopping time maximizing p(1): the grid argmax refined by golden-section search.

    When the grid scan shows more than one peak the refinement uses a fine grid around the best grid point
    instead. Ties go to the smaller time and the result never scores below the best grid point.
    """
    ts, p1 = curves.ts, curves.p1
    i = int(np.argmax(p1))
    best_t, best_p = float(ts[i]), float(p1[i])
    lo, hi = float(ts[max(i - 1, 0)]), float(ts[min(i + 1, len(ts) - 1)])
    if hi <= lo:
        return best_t

    def negative_p1(t):
        return -curves.evaluate(t)[1]

    if _is_unimodal(p1):
        try:
            if 0 < i < len(ts) - 1:
                scale = max(abs(best_t), tolerance)
                found = minimize_scalar(negative_p1, bracket=(lo, best_t, hi), method="golden", tol=tolerance / scale)
            else:
                raise ValueError("boundary maximum")
        except ValueError:
            found = minimize_scalar(negative_p1, bounds=(lo, hi), method="bounded", options={"xatol": tolerance})
        candidate, value = float(found.x), -float(found.fun)
    else:
        _logger.debug("p1(T_s) is not unimodal on the grid; refining on a fine grid.")
        fine = np.linspace(lo, hi, FINE_GRID_POINTS)
        values = curves.evaluate_many(fine)[1]
        j = int(np.argmax(values))
        candidate, value = float(fine[j]), float(values[j])
    if lo <= candidate <= hi and value > best_p:
        return candidate
    return best_t
