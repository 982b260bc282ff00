"""
Propagation entry points: method selection with RK4 fallback, the two-phase (pumping on, then off) evolution and
asymptotic states.
"""
import hashlib
import logging
from collections import OrderedDict
from typing import Sequence
from typing import Tuple

import numpy as np
from scipy.linalg import svd

from _spsfeedback_sdk.algebra.space import SpaceDescriptor
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Subsystem
from _spsfeedback_sdk.exceptions import DefectiveDecompositionError
from _spsfeedback_sdk.exceptions import IntegrationError
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SolverOptions
from _spsfeedback_sdk.propagate.models import SpectralDecomposition
from _spsfeedback_sdk.propagate.models import SwitchPlan
from _spsfeedback_sdk.propagate.models import Trajectory
from _spsfeedback_sdk.propagate.rk4 import rk4_evolve
from _spsfeedback_sdk.propagate.spectral import spectral_decompose
from _spsfeedback_sdk.propagate.spectral import spectral_trajectory

_logger = logging.getLogger("spsfeedback.propagate")

CROSS_CHECK_TOLERANCE = 1e-6
# long-time RK4 cross-checks stop here even when the slowest mode is slower
RK4_HORIZON_CAP = 2000.0
_PROJECTOR_CACHE_SIZE = 64

_projector_cache = OrderedDict()


def trace_norm_difference(a: DensityState, b: DensityState) -> float:
    """‖ρ_a − ρ_b‖₁, the sum of singular values of the difference."""
    return float(np.linalg.norm(a.to_matrix() - b.to_matrix(), "nuc"))


def _validated(trajectory: Trajectory) -> Trajectory:
    for state in trajectory.states():
        state.validate_state()
    return trajectory


def _rk4(generator, rho0, times, options) -> Trajectory:
    end = float(times[-1]) if len(times) else 0.0
    try:
        return rk4_evolve(generator, rho0, end, options.rk4_dt, times=times)
    except IntegrationError as err:
        _logger.warning(f"{err.message} Halving the step to {options.rk4_dt / 2:g} and retrying.")
        return rk4_evolve(generator, rho0, end, options.rk4_dt / 2, times=times)


def evolve(
    generator: LiouvillianMatrix,
    rho0: DensityState,
    times: Sequence[float],
    method: Method = Method.SPECTRAL,
    options: SolverOptions = None,
    decomposition: SpectralDecomposition = None,
) -> Trajectory:
    """
    Sample e^{𝓛t}ρ₀ at the offsets `times` (relative to `rho0.time`).

    The spectral route falls back to RK4 when the decomposition is defective-suspect or a sample fails the density
    state checks. Every emitted sample satisfies the trace, Hermiticity and positivity invariants.

    **Parameters**:

    * **generator**: `LiouvillianMatrix` - Full or sector-restricted generator.
    * **rho0**: `DensityState` - Initial state; must lie in the generator's sector when restricted.
    * **times**: `Sequence[float]` - Nonnegative, nondecreasing offsets.
    * **method**: `Method` - `spectral` (default) or `rk4`.
    * **options**: `SolverOptions` - Step size, condition limit and tolerances.
    * **decomposition**: `SpectralDecomposition` - Reuse a decomposition of `generator` instead of computing one.
    """
    options = options or SolverOptions()
    times = np.asarray(times, dtype=float)
    if Method(method) == Method.SPECTRAL:
        decomp = decomposition or spectral_decompose(
            generator, options.condition_limit, options.stable_tolerance
        )
        if not decomp.defective:
            try:
                return _validated(spectral_trajectory(decomp, rho0, times))
            except NumericError as err:
                _logger.warning(f"spectral propagation rejected ({err}); falling back to RK4.")
    return _validated(_rk4(generator, rho0, times, options))


def _cache_key(generator: LiouvillianMatrix, tolerance: float) -> Tuple:
    digest = hashlib.sha1(generator.matrix.tobytes())
    if generator.sector is not None:
        digest.update(generator.sector.tobytes())
    return generator.space.dims, digest.hexdigest(), tolerance


def asymptotic_projector(
    generator: LiouvillianMatrix,
    stable_tolerance: float = 1e-10,
    condition_limit: float = 1e10,
) -> np.ndarray:
    """
    Projector onto the kernel of 𝓛 along its range, P = R (WᴴR)⁻¹ Wᴴ.

    R and W hold the right and left null vectors, both read off one SVD. Applied to vec(ρ) this gives the t → ∞
    limit whenever the generator has no purely imaginary modes (otherwise it gives the time average). Raises
    `NumericError` when the zero eigenvalue is not semisimple.
    """
    key = _cache_key(generator, stable_tolerance)
    if key in _projector_cache:
        _projector_cache.move_to_end(key)
        return _projector_cache[key]
    u, s, vh = svd(generator.matrix)
    threshold = stable_tolerance * max(1.0, float(s[0]))
    null = s < threshold
    if not null.any():
        raise NumericError("generator has no stationary state: no singular value below tolerance.")
    right = vh[null].conj().T
    left = u[:, null]
    overlap = left.conj().T @ right
    if np.linalg.cond(overlap) > condition_limit:
        raise NumericError("left and right null spaces are nearly orthogonal; the stationary subspace is defective.")
    projector = right @ np.linalg.solve(overlap, left.conj().T)
    projector.setflags(write=False)
    _projector_cache[key] = projector
    if len(_projector_cache) > _PROJECTOR_CACHE_SIZE:
        _projector_cache.popitem(last=False)
    _logger.debug(f"stationary subspace of dimension {int(null.sum())}")
    return projector


def bath_readout_rows(space: SpaceDescriptor, sector: np.ndarray = None) -> np.ndarray:
    """Rows mapping vec(ρ) to the bath Fock populations ⟨n|Tr_rest ρ|n⟩, one row per bath level."""
    bath = space.index_of(Subsystem.BATH)
    if bath is None:
        raise InvalidArgumentError(f"space {space.labels} has no bath subsystem.", value=space.labels)
    n = space.total_dim
    levels = np.unravel_index(np.arange(n), space.dims)[bath]
    rows = np.zeros((space.dims[bath], n * n))
    diagonal = np.arange(n) * (n + 1)
    rows[levels, diagonal] = 1.0
    return rows if sector is None else rows[:, sector]


def asymptotic_readout(generator: LiouvillianMatrix, options: SolverOptions = None) -> np.ndarray:
    """
    Linear functionals r_k with p_k(∞) = r_k · vec(ρ), one per bath level.

    Composes the bath marginal with the kernel projector so a single SVD serves every starting state.
    """
    options = options or SolverOptions()
    projector = asymptotic_projector(generator, options.stable_tolerance, options.condition_limit)
    return bath_readout_rows(generator.space, generator.sector) @ projector


def _slowest_rate(generator: LiouvillianMatrix, decomposition: SpectralDecomposition = None) -> float:
    eigenvalues = decomposition.eigenvalues if decomposition else np.linalg.eigvals(generator.matrix)
    rates = np.abs(eigenvalues.real)
    rates = rates[rates > 1e-10 * max(1.0, rates.max(initial=0.0))]
    return float(rates.min()) if rates.size else 1.0


def asymptotic_cross_check(
    generator: LiouvillianMatrix,
    rho: DensityState,
    asymptote: DensityState,
    options: SolverOptions = None,
    decomposition: SpectralDecomposition = None,
) -> float:
    """Trace-norm gap between `asymptote` and a long RK4 run of t_end = 50/min|Re λ≠0| (capped)."""
    options = options or SolverOptions()
    t_end = min(50.0 / _slowest_rate(generator, decomposition), RK4_HORIZON_CAP)
    long_run = _rk4(generator, rho, [t_end], options).final
    residual = trace_norm_difference(long_run, asymptote)
    if residual > CROSS_CHECK_TOLERANCE:
        _logger.warning(f"asymptotic state and RK4 at t={t_end:g} differ by {residual:.3e} in trace norm.")
    else:
        _logger.debug(f"asymptotic cross-check residual {residual:.3e} at t={t_end:g}")
    return residual


def asymptotic_state(
    generator: LiouvillianMatrix,
    rho: DensityState,
    options: SolverOptions = None,
    cross_check: bool = None,
    decomposition: SpectralDecomposition = None,
) -> DensityState:
    """
    t → ∞ limit of e^{𝓛t}ρ by kernel projection.

    When the projection fails a long RK4 run stands in; if that also fails a `NumericError` is raised. With
    `cross_check` (default: `options.validate_cross_method`) the result is compared against long RK4 evolution.
    """
    options = options or SolverOptions()
    cross_check = options.validate_cross_method if cross_check is None else cross_check
    try:
        projector = asymptotic_projector(generator, options.stable_tolerance, options.condition_limit)
        local = projector @ generator.to_local(rho.vec)
        result = DensityState(vec=generator.to_full(local), space=rho.space, time=np.inf)
    except NumericError as err:
        _logger.warning(f"kernel projection failed ({err}); using long-time RK4 instead.")
        t_end = min(50.0 / _slowest_rate(generator, decomposition), RK4_HORIZON_CAP)
        try:
            result = _rk4(generator, rho, [t_end], options).final.with_time(np.inf)
        except IntegrationError as rk4_err:
            raise NumericError(f"asymptotic state unavailable: {err}; {rk4_err}")
        cross_check = False

    if decomposition is not None:
        scale = max(1.0, float(np.abs(decomposition.eigenvalues).max()))
        oscillating = (decomposition.eigenvalues.real == 0) & (
            np.abs(decomposition.eigenvalues.imag) > options.stable_tolerance * scale
        )
        if oscillating.any():
            _logger.warning("generator has undamped oscillating modes; the asymptotic state is their time average.")
    if cross_check:
        asymptotic_cross_check(generator, rho, result, options, decomposition)
    return result.validate_state()


def two_phase_evolve(
    plan: SwitchPlan,
    rho0: DensityState,
    method: Method = Method.SPECTRAL,
    options: SolverOptions = None,
) -> Tuple[DensityState, DensityState]:
    """
    Pump until `plan.t_switch`, then let the pumping-off generator run to completion.

    Returns ρ(T_s) and the asymptotic state under `plan.generator_off` started from it.
    """
    options = options or SolverOptions()
    at_switch = evolve(plan.generator_on, rho0, [plan.t_switch], method, options).final
    return at_switch, asymptotic_state(plan.generator_off, at_switch, options)


def sample_two_phase(
    plan: SwitchPlan,
    rho0: DensityState,
    times: Sequence[float],
    method: Method = Method.SPECTRAL,
    options: SolverOptions = None,
) -> Trajectory:
    """Sample a trajectory at `times` (offsets from `rho0.time`) across the generator swap at `plan.t_switch`."""
    options = options or SolverOptions()
    times = np.asarray(times, dtype=float)
    before = times[times <= plan.t_switch]
    after = times[times > plan.t_switch] - plan.t_switch

    first = evolve(plan.generator_on, rho0, np.append(before, plan.t_switch), method, options)
    second = evolve(plan.generator_off, first.final, after, method, options)
    used = Method.RK4 if Method.RK4 in (Method(first.method), Method(second.method)) else Method.SPECTRAL
    return Trajectory(
        space=rho0.space,
        times=np.concatenate([first.times[:-1], second.times]),
        vecs=np.concatenate([first.vecs[:-1], second.vecs]),
        method=used,
        t_switch=rho0.time + plan.t_switch,
    )
