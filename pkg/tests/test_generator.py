import logging

import numpy as np
import pytest

from _spsfeedback_sdk.algebra.operators import charge_sector
from _spsfeedback_sdk.algebra.operators import system_operators
from _spsfeedback_sdk.algebra.space import make_space
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.generator.liouvillian import build_deterministic
from _spsfeedback_sdk.generator.liouvillian import build_feedback
from _spsfeedback_sdk.generator.liouvillian import check_liouvillian
from _spsfeedback_sdk.generator.liouvillian import dissipator
from _spsfeedback_sdk.generator.liouvillian import hamiltonian_part
from _spsfeedback_sdk.generator.liouvillian import jc_hamiltonian
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.generator.models import ModelParams


def _random_density(n, seed=7):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def test_dissipator_matches_direct_formula():
    rng = np.random.default_rng(3)
    L = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = _random_density(4)
    LdL = L.conj().T @ L
    direct = L @ rho @ L.conj().T - 0.5 * (LdL @ rho + rho @ LdL)
    assert np.allclose((dissipator(L) @ rho.reshape(-1)).reshape(4, 4), direct)


def test_dissipator_is_trace_preserving():
    L = np.diag(np.sqrt([1.0, 2.0]), k=1)
    row = np.eye(3).reshape(-1)
    assert np.allclose(row @ dissipator(L), 0)


def test_hamiltonian_part_is_commutator():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    H = m + m.conj().T
    rho = _random_density(3)
    expected = -1j * (H @ rho - rho @ H)
    assert np.allclose((hamiltonian_part(H) @ rho.reshape(-1)).reshape(3, 3), expected)


def test_hamiltonian_part_rejects_non_hermitian():
    with pytest.raises(InvalidArgumentError):
        hamiltonian_part(np.array([[0, 1], [0, 0]]))


def test_jc_hamiltonian_is_hermitian(open_loop_space):
    H = jc_hamiltonian(0.3, open_loop_space)
    assert H.is_hermitian()
    with pytest.raises(InvalidArgumentError):
        jc_hamiltonian(-0.1, open_loop_space)


@pytest.mark.parametrize("pumping", [Pumping.ON, Pumping.OFF])
def test_deterministic_generator_invariants(params, pumping):
    generator = build_deterministic(params, pumping)
    assert generator.dim == 18**2
    diagnostics = check_liouvillian(generator, tolerance=1e-8)
    assert diagnostics.trace_residual < 1e-12
    assert diagnostics.spectral_abscissa <= 1e-8


@pytest.mark.parametrize("pumping", [Pumping.ON, Pumping.OFF])
def test_feedback_generator_invariants(feedback_params, pumping):
    generator = build_feedback(feedback_params, pumping, restrict=True)
    assert generator.dim == 140
    diagnostics = check_liouvillian(generator, tolerance=1e-8)
    assert diagnostics.trace_residual < 1e-12


def test_pumping_off_equals_zero_pump(params):
    off = build_deterministic(params, Pumping.OFF)
    on_without_pump = build_deterministic(params.copy(update={"omega": 0.0}), Pumping.ON)
    assert np.allclose(off.matrix, on_without_pump.matrix)


def test_feedback_off_drops_measurement_unless_kept(feedback_params):
    quiet = feedback_params.copy(update={"omega": 0.0, "gamma_meas": 0.0, "nu1": 0.0, "nu0": 0.0})
    off = build_feedback(feedback_params, Pumping.OFF, warn=False)
    assert np.allclose(off.matrix, build_feedback(quiet, Pumping.ON, warn=False).matrix)

    kept = build_feedback(feedback_params, Pumping.OFF, keep_measurement_after_stop=True, warn=False)
    expected = build_feedback(feedback_params.copy(update={"omega": 0.0}), Pumping.ON, warn=False)
    assert np.allclose(kept.matrix, expected.matrix)


@pytest.mark.parametrize("pumping", [Pumping.ON, Pumping.OFF])
def test_feedback_without_measurement_reduces_to_open_loop(params, pumping):
    # control last: |sys, 1⟩ is basis index 2·sys + 1 of the 36 feedback states
    quiet = params.copy(update={"gamma_meas": 0.0, "nu1": 0.0, "nu0": 0.0})
    feedback = build_feedback(quiet, pumping, warn=False).matrix
    deterministic = build_deterministic(quiet, pumping).matrix
    on = [(2 * a + 1) * 36 + 2 * b + 1 for a in range(18) for b in range(18)]
    assert np.allclose(feedback[np.ix_(on, on)], deterministic, atol=1e-14)


def test_feedback_generator_contains_switch_channels(feedback_space, feedback_params):
    ops = system_operators(feedback_space)
    base = feedback_params.copy(update={"nu1": 0.0, "nu0": 0.0})
    difference = build_feedback(feedback_params, warn=False).matrix - build_feedback(base, warn=False).matrix
    expected = feedback_params.nu1 * dissipator(ops.c @ ops.proj_x) + feedback_params.nu0 * dissipator(
        ops.c @ (ops.identity - ops.proj_x)
    )
    assert np.allclose(difference, expected)


def test_restricted_generator_is_block_of_full(feedback_params, feedback_space):
    full = build_feedback(feedback_params, warn=False)
    restricted = build_feedback(feedback_params, restrict=True, warn=False)
    sector = charge_sector(feedback_space)
    assert np.allclose(restricted.matrix, full.matrix[np.ix_(sector, sector)])
    assert np.allclose(full.restrict(sector).matrix, restricted.matrix)


def test_sector_is_invariant(feedback_params, feedback_space):
    full = build_feedback(feedback_params, warn=False).matrix
    sector = charge_sector(feedback_space)
    outside = np.setdiff1d(np.arange(full.shape[0]), sector)
    # nothing leaks from the sector into the rest of vec(ρ)
    assert np.abs(full[np.ix_(outside, sector)]).max() == 0


def test_builders_check_control_subsystem(params, feedback_space, open_loop_space):
    with pytest.raises(InvalidArgumentError):
        build_deterministic(params, space=feedback_space)
    with pytest.raises(InvalidArgumentError):
        build_feedback(params, space=open_loop_space)


def test_build_feedback_warns_outside_regime(params, caplog):
    with caplog.at_level(logging.WARNING, logger="spsfeedback"):
        build_feedback(params, Pumping.ON)
    assert "outside the threshold-switching regime" in caplog.text


def test_regime_warnings_empty_inside_regime():
    inside = ModelParams(omega=0.1, g=0.1, gamma_sp=0.001, gamma_meas=1.0, nu1=0.5, nu0=0.05)
    assert inside.regime_warnings() == []


def test_regime_warnings_name_the_violation():
    outside = ModelParams(omega=0.1, g=0.1, gamma_sp=0.001, gamma_meas=0.2, nu1=0.5, nu0=0.05)
    found = outside.regime_warnings()
    assert len(found) == 1
    assert "exceeds γ" in found[0]


def test_check_liouvillian_flags_trace_loss(open_loop_space):
    leaky = LiouvillianMatrix(matrix=-np.eye(18**2), space=open_loop_space)
    with pytest.raises(NumericError):
        check_liouvillian(leaky, abscissa=False)


def test_liouvillian_matrix_size_must_match_space():
    with pytest.raises(InvalidArgumentError):
        LiouvillianMatrix(matrix=np.zeros((4, 4)), space=make_space([2, 3, 3]))
