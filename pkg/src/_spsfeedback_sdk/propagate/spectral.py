"""
Eigen-expansion propagation ρ(t) = Σ_j c_j e^{λ_j t} v_j.
"""
import logging
from typing import Sequence

import numpy as np
from scipy.linalg import eig
from scipy.linalg import LinAlgError
from scipy.linalg import lu_factor
from scipy.linalg import lu_solve

from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.exceptions import DefectiveDecompositionError
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SpectralDecomposition
from _spsfeedback_sdk.propagate.models import Trajectory

_logger = logging.getLogger("spsfeedback.propagate")

DEFAULT_CONDITION_LIMIT = 1e10
# beyond this the generator has a genuinely growing mode, not eigensolver noise
GROWTH_TOLERANCE = 1e-8


def spectral_decompose(
    generator: LiouvillianMatrix,
    condition_limit: float = DEFAULT_CONDITION_LIMIT,
    stable_tolerance: float = 1e-10,
) -> SpectralDecomposition:
    """
    Full right eigendecomposition of `generator`.

    Real parts within `stable_tolerance · max(1, ‖𝓛‖)` of zero are snapped to zero so stable modes do not drift
    over long times. The decomposition is flagged defective when the 2-norm condition number of the eigenvector
    matrix exceeds `condition_limit` or the matrix cannot be factorized.
    """
    M = generator.matrix
    if not np.all(np.isfinite(M)):
        raise NumericError("generator contains non-finite entries.")
    try:
        eigenvalues, vectors = eig(M)
    except LinAlgError as err:
        raise NumericError(f"eigensolver did not converge: {err}")

    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    stable = np.abs(eigenvalues.real) < stable_tolerance * scale
    eigenvalues = np.where(stable, 1j * eigenvalues.imag, eigenvalues)
    abscissa = float(eigenvalues.real.max(initial=-np.inf))
    if abscissa > GROWTH_TOLERANCE * scale:
        raise NumericError(f"generator has a growing mode: spectral abscissa {abscissa:.3e}.")

    condition = float(np.linalg.cond(vectors))
    lu = None
    defective = not np.isfinite(condition) or condition > condition_limit
    if not defective:
        try:
            lu = lu_factor(vectors, check_finite=True)
        except (LinAlgError, ValueError):
            defective = True
    if defective:
        _logger.warning(
            f"eigenvector matrix is ill-conditioned (cond={condition:.3e}); "
            "treating the generator as defective and falling back to RK4."
        )
    else:
        _logger.debug(f"decomposed generator of size {M.shape[0]}, cond={condition:.3e}")
    return SpectralDecomposition(
        generator=generator,
        eigenvalues=eigenvalues,
        vectors=vectors,
        lu=lu,
        condition=condition,
        defective=defective,
    )


def coefficients(decomp: SpectralDecomposition, rho0: DensityState) -> np.ndarray:
    """Expansion coefficients c = V⁻¹ vec(ρ₀) in the decomposition's coordinates."""
    if decomp.defective:
        raise DefectiveDecompositionError(decomp.condition)
    return lu_solve(decomp.lu, decomp.generator.to_local(rho0.vec))


def spectral_evolve(decomp: SpectralDecomposition, rho0: DensityState, t: float) -> DensityState:
    """Evolve `rho0` by `t`. Refuses with `DefectiveDecompositionError` on a defective-suspect decomposition."""
    c = coefficients(decomp, rho0)
    local = decomp.vectors @ (c * np.exp(decomp.eigenvalues * t))
    return DensityState(vec=decomp.generator.to_full(local), space=rho0.space, time=rho0.time + t)


def spectral_trajectory(decomp: SpectralDecomposition, rho0: DensityState, times: Sequence[float]) -> Trajectory:
    """Evaluate the eigen-expansion at every offset in `times` with a single coefficient solve."""
    times = np.asarray(times, dtype=float)
    c = coefficients(decomp, rho0)
    local = decomp.vectors @ (c[:, None] * np.exp(np.outer(decomp.eigenvalues, times)))
    vecs = np.array([decomp.generator.to_full(column) for column in local.T])
    if not len(times):
        vecs = np.zeros((0, rho0.space.total_dim**2))
    return Trajectory(space=rho0.space, times=times + rho0.time, vecs=vecs, method=Method.SPECTRAL)
