"""
Fixed-step fourth-order Runge-Kutta integration of dρ/dt = 𝓛ρ.
"""
import logging
import math
from typing import Sequence

import numpy as np

from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.exceptions import IntegrationError
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import Trajectory

_logger = logging.getLogger("spsfeedback.propagate")

TRACE_DRIFT_LIMIT = 1e-6
STABILITY_FACTOR = 0.5


def rk4_step_matrix(generator: LiouvillianMatrix, h: float) -> np.ndarray:
    """
    Propagator of one classical RK4 step of length `h`.

    For an autonomous linear system the four stages collapse to I + h𝓛 + (h𝓛)²/2 + (h𝓛)³/6 + (h𝓛)⁴/24.
    """
    M = generator.matrix
    identity = np.eye(M.shape[0], dtype=complex)
    hM = h * M
    step = identity + hM / 4.0
    step = identity + (hM / 3.0) @ step
    step = identity + (hM / 2.0) @ step
    return identity + hM @ step


def _check_stability(generator: LiouvillianMatrix, dt: float):
    norm = float(np.linalg.norm(generator.matrix, np.inf))
    if norm > 0 and dt > STABILITY_FACTOR / norm:
        _logger.warning(
            f"RK4 step dt={dt:g} exceeds {STABILITY_FACTOR}/‖𝓛‖∞ = {STABILITY_FACTOR / norm:.3g}; "
            "the integration may be unstable."
        )


def rk4_evolve(
    generator: LiouvillianMatrix,
    rho0: DensityState,
    t_end: float,
    dt: float,
    times: Sequence[float] = None,
) -> Trajectory:
    """
    Integrate from `rho0.time` over a duration `t_end` with step at most `dt`.

    The trajectory is sampled at `times` (offsets from `rho0.time`, default `[0, t_end]`); every interval between
    consecutive samples is split into equal substeps no longer than `dt` so samples are hit exactly. Raises
    `IntegrationError` when the trace drifts by more than 1e-6.
    """
    if dt <= 0:
        raise InvalidArgumentError(f"RK4 step must be positive, got {dt}.", value=dt)
    if t_end < 0:
        raise InvalidArgumentError(f"cannot integrate backwards to t_end={t_end}.", value=t_end)
    samples = np.array([0.0, t_end] if times is None else times, dtype=float)
    if samples.size and (samples[0] < 0 or np.any(np.diff(samples) < 0)):
        raise InvalidArgumentError("sample times must be nonnegative and nondecreasing.")
    _check_stability(generator, dt)

    trace_row = generator.trace_row()
    local = generator.to_local(rho0.vec).copy()
    trace0 = trace_row @ local
    steps = {}
    current = 0.0
    rows = []
    for sample in samples:
        span = sample - current
        if span > 0:
            n = max(1, math.ceil(span / dt - 1e-9))
            h = span / n
            if h not in steps:
                steps[h] = rk4_step_matrix(generator, h)
            propagator = steps[h]
            for _ in range(n):
                local = propagator @ local
            drift = abs(trace_row @ local - trace0)
            if drift > TRACE_DRIFT_LIMIT:
                raise IntegrationError(drift, dt)
            current = sample
        rows.append(generator.to_full(local))
    _logger.debug(f"RK4 integrated {samples[-1] if samples.size else 0:g}/κ with dt={dt:g}")
    return Trajectory(
        space=rho0.space,
        times=samples + rho0.time,
        vecs=np.array(rows) if rows else np.zeros((0, rho0.space.total_dim**2)),
        method=Method.RK4,
    )
