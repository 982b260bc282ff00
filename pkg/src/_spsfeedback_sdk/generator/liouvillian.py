"""
Assembly of GKSL generators in row-major vectorization, vec(AρB) = (A ⊗ Bᵀ) vec(ρ).

Unit-rate superoperators are cached per space (and per charge sector), so building a generator for a new parameter
point is a weighted sum of cached blocks.
"""
import logging
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np

from _spsfeedback_sdk.algebra.operators import charge_sector
from _spsfeedback_sdk.algebra.operators import Operator
from _spsfeedback_sdk.algebra.operators import system_operators
from _spsfeedback_sdk.algebra.space import DEFAULT_DIMS
from _spsfeedback_sdk.algebra.space import DETERMINISTIC_DIMS
from _spsfeedback_sdk.algebra.space import make_space
from _spsfeedback_sdk.algebra.space import SpaceDescriptor
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.generator.models import LindbladTerm
from _spsfeedback_sdk.generator.models import LiouvillianDiagnostics
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.generator.models import ModelParams

_logger = logging.getLogger("spsfeedback.generator")

HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-10


def _matrix_of(op) -> np.ndarray:
    matrix = op.matrix if isinstance(op, Operator) else np.asarray(op, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidArgumentError(f"expected a square operator, got shape {matrix.shape}.")
    return matrix


def dissipator(L) -> np.ndarray:
    """Superoperator of 𝓗[L]ρ = LρL† − ½{L†L, ρ}."""
    L = _matrix_of(L)
    identity = np.eye(L.shape[0], dtype=complex)
    LdL = L.conj().T @ L
    return np.kron(L, L.conj()) - 0.5 * np.kron(LdL, identity) - 0.5 * np.kron(identity, LdL.T)


def hamiltonian_part(H) -> np.ndarray:
    """Superoperator of −i[H, ρ] (ħ = 1). Raises `InvalidArgumentError` for non-Hermitian `H`."""
    H = _matrix_of(H)
    scale = max(1.0, float(np.abs(H).max(initial=0.0)))
    if not np.allclose(H, H.conj().T, atol=HERMITIAN_TOLERANCE * scale, rtol=0):
        raise InvalidArgumentError("Hamiltonian is not Hermitian within tolerance.")
    identity = np.eye(H.shape[0], dtype=complex)
    return -1j * (np.kron(H, identity) - np.kron(identity, H.T))


def jc_hamiltonian(g: float, space: SpaceDescriptor) -> Operator:
    """Jaynes-Cummings interaction H = i g (a†σ⁻ − aσ⁺) in the interaction picture."""
    if g < 0:
        raise InvalidArgumentError(f"coupling must be non-negative, got {g}.", value=g)
    ops = system_operators(space)
    return 1j * g * (ops.a_dag @ ops.sigma_minus - ops.a @ ops.sigma_plus)


def _terms(params: ModelParams, space: SpaceDescriptor, feedback: bool) -> List[LindbladTerm]:
    ops = system_operators(space)
    pump = ops.sigma_plus @ ops.xi if feedback else ops.sigma_plus
    terms = [
        LindbladTerm(name="pump", rate=params.omega, operator=pump),
        LindbladTerm(name="spontaneous", rate=params.gamma_sp, operator=ops.sigma_minus),
        LindbladTerm(name="leakage", rate=params.kappa, operator=ops.a @ ops.b_dag),
    ]
    if feedback:
        terms += [
            LindbladTerm(name="dephasing", rate=params.gamma_meas, operator=ops.proj_x),
            LindbladTerm(name="switch_excited", rate=params.nu1, operator=ops.c @ ops.proj_x),
            LindbladTerm(
                name="switch_ground", rate=params.nu0, operator=ops.c @ (ops.identity - ops.proj_x)
            ),
        ]
    return terms


_unit_cache: Dict[Tuple, Dict[str, np.ndarray]] = {}


def _unit_blocks(space: SpaceDescriptor, feedback: bool, restricted: bool) -> Dict[str, np.ndarray]:
    key = (space.dims, space.labels, feedback, restricted)
    if key not in _unit_cache:
        unit = ModelParams(omega=1, g=1, gamma_sp=1, gamma_meas=1, kappa=1, nu1=1, nu0=1)
        blocks = {"hamiltonian": hamiltonian_part(jc_hamiltonian(1.0, space))}
        for term in _terms(unit, space, feedback):
            blocks[term.name] = dissipator(term.operator)
        if restricted:
            sector = charge_sector(space)
            blocks = {name: block[np.ix_(sector, sector)] for name, block in blocks.items()}
        _unit_cache[key] = blocks
        _logger.debug(f"cached unit superoperators for {space.dims} feedback={feedback} restricted={restricted}")
    return _unit_cache[key]


def _rates(params: ModelParams, pumping: Pumping, feedback: bool, keep_measurement: bool) -> Dict[str, float]:
    on = Pumping(pumping) == Pumping.ON
    rates = {
        "hamiltonian": params.g,
        "pump": params.omega if on else 0.0,
        "spontaneous": params.gamma_sp,
        "leakage": params.kappa,
    }
    if feedback:
        measuring = on or keep_measurement
        rates.update(
            dephasing=params.gamma_meas if measuring else 0.0,
            switch_excited=params.nu1 if measuring else 0.0,
            switch_ground=params.nu0 if measuring else 0.0,
        )
    return rates


def _assemble(params, pumping, space, feedback, keep_measurement, restrict) -> LiouvillianMatrix:
    blocks = _unit_blocks(space, feedback, restrict)
    rates = _rates(params, pumping, feedback, keep_measurement)
    matrix = np.zeros_like(blocks["hamiltonian"])
    for name, block in blocks.items():
        if rates[name]:
            matrix += rates[name] * block
    return LiouvillianMatrix(
        matrix=matrix,
        phase=Pumping(pumping),
        space=space,
        sector=charge_sector(space) if restrict else None,
    )


def build_deterministic(
    params: ModelParams,
    pumping: Pumping = Pumping.ON,
    space: SpaceDescriptor = None,
    restrict: bool = False,
) -> LiouvillianMatrix:
    """
    Open-loop generator −i[H_JC, ·] + Ω𝓗[σ⁺] + Γ𝓗[σ⁻] + κ𝓗[a b†] on the dot ⊗ cavity ⊗ bath space.

    `pumping=off` drops the Ω term. With `restrict=True` the generator is returned on the charge sector.
    """
    space = space or make_space(DETERMINISTIC_DIMS)
    if space.has_control:
        raise InvalidArgumentError(
            f"the open-loop model has no control subsystem; got space {space.labels}.", value=space.dims
        )
    return _assemble(params, pumping, space, False, False, restrict)


def build_feedback(
    params: ModelParams,
    pumping: Pumping = Pumping.ON,
    space: SpaceDescriptor = None,
    restrict: bool = False,
    keep_measurement_after_stop: bool = False,
    warn: bool = True,
) -> LiouvillianMatrix:
    """
    Threshold-feedback generator

        −i[H_JC, ·] + Ω𝓗[σ⁺ξ] + Γ𝓗[σ⁻] + κ𝓗[a b†] + γ𝓗[𝒫_X] + ν₁𝓗[c 𝒫_X] + ν₀𝓗[c (I − 𝒫_X)]

    on the dot ⊗ cavity ⊗ bath ⊗ control space. `pumping=off` zeroes Ω, and also γ, ν₀ and ν₁ unless
    `keep_measurement_after_stop` is set.
    """
    space = space or make_space(DEFAULT_DIMS)
    if not space.has_control:
        raise InvalidArgumentError(
            f"the feedback model needs a control subsystem; got space {space.labels}.", value=space.dims
        )
    if warn and Pumping(pumping) == Pumping.ON:
        for message in params.regime_warnings():
            _logger.warning(f"outside the threshold-switching regime: {message}")
    return _assemble(params, pumping, space, True, keep_measurement_after_stop, restrict)


def check_liouvillian(
    generator: LiouvillianMatrix,
    abscissa: bool = True,
    tolerance: float = TRACE_TOLERANCE,
) -> LiouvillianDiagnostics:
    """
    Verify trace preservation (vec(I)ᵀ 𝓛 = 0) and, optionally, that no eigenvalue has a positive real part.

    Raises `NumericError` when either residual exceeds `tolerance`.
    """
    residual = float(np.abs(generator.trace_row() @ generator.matrix).max(initial=0.0))
    if residual > tolerance:
        raise NumericError(f"generator is not trace preserving: residual {residual:.3e}.")
    spectral_abscissa = None
    if abscissa:
        spectral_abscissa = float(np.linalg.eigvals(generator.matrix).real.max())
        if spectral_abscissa > tolerance:
            raise NumericError(f"generator has a growing mode: spectral abscissa {spectral_abscissa:.3e}.")
    return LiouvillianDiagnostics(trace_residual=residual, spectral_abscissa=spectral_abscissa)
