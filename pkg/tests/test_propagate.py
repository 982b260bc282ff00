import numpy as np
import pytest

from _spsfeedback_sdk.algebra.operators import basis_index
from _spsfeedback_sdk.algebra.space import make_space
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.exceptions import DefectiveDecompositionError
from _spsfeedback_sdk.exceptions import IntegrationError
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.exceptions import PositivityViolationError
from _spsfeedback_sdk.generator.liouvillian import build_deterministic
from _spsfeedback_sdk.generator.liouvillian import build_feedback
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.observables.stats import emission_stats
from _spsfeedback_sdk.observables.stats import excited_population
from _spsfeedback_sdk.propagate import evolution
from _spsfeedback_sdk.propagate.evolution import asymptotic_cross_check
from _spsfeedback_sdk.propagate.evolution import asymptotic_readout
from _spsfeedback_sdk.propagate.evolution import asymptotic_state
from _spsfeedback_sdk.propagate.evolution import evolve
from _spsfeedback_sdk.propagate.evolution import sample_two_phase
from _spsfeedback_sdk.propagate.evolution import trace_norm_difference
from _spsfeedback_sdk.propagate.evolution import two_phase_evolve
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SolverOptions
from _spsfeedback_sdk.propagate.models import SwitchPlan
from _spsfeedback_sdk.propagate.rk4 import rk4_evolve
from _spsfeedback_sdk.propagate.rk4 import rk4_step_matrix
from _spsfeedback_sdk.propagate.spectral import coefficients
from _spsfeedback_sdk.propagate.spectral import spectral_decompose
from _spsfeedback_sdk.propagate.spectral import spectral_evolve
from _spsfeedback_sdk.rates.threshold import complete_rates


@pytest.fixture(scope="module")
def pumping_on(params):
    return build_deterministic(params, Pumping.ON, restrict=True)


@pytest.fixture(scope="module")
def pumping_off(params):
    return build_deterministic(params, Pumping.OFF, restrict=True)


@pytest.fixture
def ground(open_loop_space):
    return DensityState.initial(open_loop_space)


def test_initial_state_has_control_on(feedback_space, open_loop_space):
    rho = DensityState.initial(feedback_space).validate_state()
    i = basis_index((0, 0, 0, 1), feedback_space)
    assert rho.to_matrix()[i, i] == 1
    assert rho.trace() == pytest.approx(1)
    assert DensityState.initial(open_loop_space).to_matrix()[0, 0] == 1


def test_validate_state_rejects_bad_trace(open_loop_space):
    doubled = DensityState.from_matrix(2 * np.eye(18) / 18, open_loop_space)
    with pytest.raises(NumericError):
        doubled.validate_state()


def test_validate_state_rejects_negative_eigenvalue(open_loop_space):
    matrix = np.zeros((18, 18))
    matrix[0, 0], matrix[1, 1] = 1.5, -0.5
    with pytest.raises(PositivityViolationError):
        DensityState.from_matrix(matrix, open_loop_space).validate_state()


def test_validate_state_rejects_non_hermitian(open_loop_space):
    matrix = np.zeros((18, 18), dtype=complex)
    matrix[0, 0], matrix[0, 1] = 1.0, 0.3
    with pytest.raises(NumericError):
        DensityState.from_matrix(matrix, open_loop_space).validate_state()


def test_rk4_step_of_zero_generator_is_identity(open_loop_space):
    zero = LiouvillianMatrix(matrix=np.zeros((324, 324)), space=open_loop_space)
    assert np.allclose(rk4_step_matrix(zero, 0.3), np.eye(324))


def test_rk4_step_matches_taylor_polynomial(pumping_on):
    h = 0.05
    hM = h * pumping_on.matrix
    identity = np.eye(pumping_on.dim)
    expected = identity + hM + hM @ hM / 2 + hM @ hM @ hM / 6 + hM @ hM @ hM @ hM / 24
    assert np.allclose(rk4_step_matrix(pumping_on, h), expected)


def test_rk4_rejects_bad_arguments(pumping_on, ground):
    with pytest.raises(InvalidArgumentError):
        rk4_evolve(pumping_on, ground, 1.0, 0.0)
    with pytest.raises(InvalidArgumentError):
        rk4_evolve(pumping_on, ground, -1.0, 0.1)
    with pytest.raises(InvalidArgumentError):
        rk4_evolve(pumping_on, ground, 1.0, 0.1, times=[0.5, 0.2])


def test_rk4_hits_sample_times(pumping_on, ground):
    trajectory = rk4_evolve(pumping_on, ground, 2.0, 0.3, times=[0.0, 0.25, 2.0])
    assert np.allclose(trajectory.times, [0.0, 0.25, 2.0])
    assert trajectory.method == Method.RK4
    for state in trajectory.states():
        assert state.trace() == pytest.approx(1, abs=1e-12)


def test_rk4_converges_at_fourth_order(pumping_on, ground):
    reference = rk4_evolve(pumping_on, ground, 10.0, 1e-3).final
    coarse = trace_norm_difference(rk4_evolve(pumping_on, ground, 10.0, 0.2).final, reference)
    fine = trace_norm_difference(rk4_evolve(pumping_on, ground, 10.0, 0.1).final, reference)
    assert 12 < coarse / fine < 20


def test_spectral_and_rk4_agree(pumping_on, ground):
    times = [0.0, 5.0, 10.0]
    spectral = evolve(pumping_on, ground, times, Method.SPECTRAL)
    rk4 = evolve(pumping_on, ground, times, Method.RK4)
    for a, b in zip(spectral.states(), rk4.states()):
        assert trace_norm_difference(a, b) < 1e-6


RATE_GRID = [0.01, 0.05, 0.1]


@pytest.mark.parametrize("pumping", [Pumping.ON, Pumping.OFF])
@pytest.mark.parametrize("gamma", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("g", RATE_GRID)
@pytest.mark.parametrize("omega", RATE_GRID)
def test_spectral_and_rk4_agree_for_feedback(feedback_space, omega, g, gamma, pumping):
    params = complete_rates(ModelParams(omega=omega, g=g, gamma_meas=gamma, nu1=0.5))
    generator = build_feedback(params, pumping, restrict=True, warn=False)
    if pumping == Pumping.ON:
        rho0 = DensityState.initial(feedback_space)
    else:
        rho0 = DensityState.from_levels((1, 0, 0, 1), feedback_space)
    times = [2.0, 6.0]
    spectral = evolve(generator, rho0, times, Method.SPECTRAL)
    rk4 = evolve(generator, rho0, times, Method.RK4)
    for a, b in zip(spectral.states(), rk4.states()):
        assert trace_norm_difference(a, b) < 1e-6


@pytest.mark.parametrize("pumping", [Pumping.ON, Pumping.OFF])
@pytest.mark.parametrize("g", RATE_GRID)
@pytest.mark.parametrize("omega", RATE_GRID)
def test_spectral_and_rk4_agree_for_open_loop(open_loop_space, omega, g, pumping):
    generator = build_deterministic(ModelParams(omega=omega, g=g), pumping, restrict=True)
    levels = (0, 0, 0) if pumping == Pumping.ON else (1, 0, 0)
    rho0 = DensityState.from_levels(levels, open_loop_space)
    times = [2.0, 6.0]
    spectral = evolve(generator, rho0, times, Method.SPECTRAL)
    rk4 = evolve(generator, rho0, times, Method.RK4)
    for a, b in zip(spectral.states(), rk4.states()):
        assert trace_norm_difference(a, b) < 1e-6


def test_spectral_decomposition_of_feedback_generator(feedback_params, feedback_space):
    generator = build_feedback(feedback_params, Pumping.ON, restrict=True, warn=False)
    decomposition = spectral_decompose(generator)
    assert decomposition.spectral_abscissa <= 1e-8
    assert np.any(np.abs(decomposition.eigenvalues) < 1e-8)
    if not decomposition.defective:
        rho0 = DensityState.initial(feedback_space)
        rk4 = rk4_evolve(generator, rho0, 4.0, 1e-3).final
        assert trace_norm_difference(spectral_evolve(decomposition, rho0, 4.0), rk4) < 1e-6


def test_defective_decomposition_refuses_to_propagate(pumping_on, ground):
    decomposition = spectral_decompose(pumping_on, condition_limit=1.0 + 1e-12)
    assert decomposition.defective
    with pytest.raises(DefectiveDecompositionError):
        coefficients(decomposition, ground)


def test_evolve_falls_back_to_rk4_on_defective_decomposition(pumping_on, ground):
    options = SolverOptions(condition_limit=1.0 + 1e-12)
    trajectory = evolve(pumping_on, ground, [0.0, 1.0], Method.SPECTRAL, options)
    assert trajectory.method == Method.RK4


def test_integration_error_retries_with_half_step(mocker, pumping_on, ground):
    options = SolverOptions(rk4_dt=0.01)
    expected = rk4_evolve(pumping_on, ground, 1.0, 0.005, times=[0.0, 1.0])
    spy = mocker.patch.object(
        evolution, "rk4_evolve", side_effect=[IntegrationError(1e-3, 0.01), expected]
    )
    trajectory = evolve(pumping_on, ground, [0.0, 1.0], Method.RK4, options)
    assert trajectory is expected
    assert spy.call_count == 2
    assert spy.call_args_list[1].args[3] == pytest.approx(0.005)


def test_asymptotic_state_of_excited_dot(pumping_off, open_loop_space):
    excited = DensityState.from_levels((1, 0, 0), open_loop_space)
    final = asymptotic_state(pumping_off, excited)
    stats = emission_stats(final)
    assert final.time == np.inf
    assert stats.p0 + stats.p1 == pytest.approx(1, abs=1e-9)
    assert stats.p2plus == pytest.approx(0, abs=1e-9)
    # the Purcell channel 4g²/κ dominates the loss Γ
    assert stats.p1 > 0.95


def test_asymptotic_state_is_stationary_and_reached(pumping_off, open_loop_space):
    rho = DensityState.from_levels((1, 1, 0), open_loop_space)
    final = asymptotic_state(pumping_off, rho)
    assert np.linalg.norm(pumping_off.matrix @ pumping_off.to_local(final.vec)) <= 1e-8
    late = evolve(pumping_off, rho, [2000.0], Method.SPECTRAL).final
    assert trace_norm_difference(late, final) < 1e-8
    assert asymptotic_cross_check(pumping_off, rho, final) < 1e-6


def test_asymptotic_readout_matches_projected_state(pumping_off, open_loop_space):
    rho = DensityState.from_levels((1, 1, 0), open_loop_space)
    readout = asymptotic_readout(pumping_off)
    stats = emission_stats(asymptotic_state(pumping_off, rho))
    values = (readout @ pumping_off.to_local(rho.vec)).real
    assert values == pytest.approx([stats.p0, stats.p1, stats.p2plus], abs=1e-9)


def test_two_phase_without_pumping_emits_nothing(pumping_on, pumping_off, ground):
    plan = SwitchPlan(generator_on=pumping_on, generator_off=pumping_off, t_switch=0.0)
    at_switch, final = two_phase_evolve(plan, ground)
    assert trace_norm_difference(at_switch, ground) < 1e-9
    assert emission_stats(final).p0 == pytest.approx(1, abs=1e-9)


def test_sample_two_phase_spans_the_switch(pumping_on, pumping_off, ground):
    plan = SwitchPlan(generator_on=pumping_on, generator_off=pumping_off, t_switch=5.0)
    times = np.linspace(0.0, 20.0, 9)
    trajectory = sample_two_phase(plan, ground, times)
    assert np.allclose(trajectory.times, times)
    assert trajectory.t_switch == 5.0
    at_switch, _ = two_phase_evolve(plan, ground)
    assert trace_norm_difference(trajectory.state(2), at_switch) < 1e-8
    # the bath only fills: p0 never increases
    p0 = [emission_stats(state).p0 for state in trajectory.states()]
    assert np.all(np.diff(p0) <= 1e-9)


def test_switch_plan_needs_matching_coordinates(params, pumping_on):
    full_off = build_deterministic(params, Pumping.OFF)
    with pytest.raises(ValueError):
        SwitchPlan(generator_on=pumping_on, generator_off=full_off, t_switch=1.0)


def test_switch_plan_rejects_negative_time(pumping_on, pumping_off):
    with pytest.raises(ValueError):
        SwitchPlan(generator_on=pumping_on, generator_off=pumping_off, t_switch=-1.0)


def test_trace_norm_of_orthogonal_states():
    space = make_space([2, 2, 3])
    a = DensityState.from_levels((0, 0, 0), space)
    b = DensityState.from_levels((1, 0, 0), space)
    assert trace_norm_difference(a, b) == pytest.approx(2)
    assert trace_norm_difference(a, a) == 0


@pytest.mark.parametrize("method", [Method.SPECTRAL, Method.RK4])
@pytest.mark.parametrize(
    "rates,levels,observable,expected",
    [
        # cavity leakage fills the bath
        ({"kappa": 1.0}, (0, 1, 0), lambda rho: emission_stats(rho).p1, lambda t: 1 - np.exp(-t)),
        # spontaneous emission empties the dot
        ({"gamma_sp": 0.5}, (1, 0, 0), excited_population, lambda t: np.exp(-0.5 * t)),
        # vacuum Rabi oscillation between |X,0⟩ and |G,1⟩
        ({"g": 1.0}, (1, 0, 0), excited_population, lambda t: np.cos(t) ** 2),
    ],
)
def test_closed_form_dynamics(open_loop_space, method, rates, levels, observable, expected):
    values = {"omega": 0.0, "g": 0.0, "gamma_sp": 0.0, "kappa": 0.0, **rates}
    generator = build_deterministic(ModelParams(**values), Pumping.OFF, restrict=True)
    rho0 = DensityState.from_levels(levels, open_loop_space)
    times = [0.0, 0.5, 1.0, 2.0]
    trajectory = evolve(generator, rho0, times, method)
    for t, state in zip(times, trajectory.states()):
        assert observable(state) == pytest.approx(expected(t), abs=1e-8)
