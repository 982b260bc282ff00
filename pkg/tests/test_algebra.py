import numpy as np
import pytest

from _spsfeedback_sdk.algebra.operators import basis_index
from _spsfeedback_sdk.algebra.operators import basis_state
from _spsfeedback_sdk.algebra.operators import charge_sector
from _spsfeedback_sdk.algebra.operators import embed
from _spsfeedback_sdk.algebra.operators import ladder
from _spsfeedback_sdk.algebra.operators import Operator
from _spsfeedback_sdk.algebra.operators import partial_trace
from _spsfeedback_sdk.algebra.operators import system_operators
from _spsfeedback_sdk.algebra.space import make_space
from _spsfeedback_sdk.enums import Subsystem
from _spsfeedback_sdk.exceptions import InvalidArgumentError


def test_make_space_total_dims(feedback_space, open_loop_space):
    assert feedback_space.total_dim == 36
    assert open_loop_space.total_dim == 18
    assert feedback_space.labels == ("dot", "cavity", "bath", "control")
    assert feedback_space.has_control
    assert not open_loop_space.has_control
    assert open_loop_space.index_of(Subsystem.BATH) == 2


@pytest.mark.parametrize("dims", [[], [2, 0, 3]])
def test_make_space_rejects_bad_dims(dims):
    with pytest.raises(InvalidArgumentError):
        make_space(dims)


def test_ladder_blocks():
    a, a_dag = ladder(3)
    assert np.allclose(a, [[0, 1, 0], [0, 0, np.sqrt(2)], [0, 0, 0]])
    assert np.allclose(a_dag, a.conj().T)
    # creation annihilates the top level of the truncated mode
    assert np.allclose(a_dag @ np.array([0, 0, 1]), 0)

    sigma_minus, _ = ladder(2)
    assert np.allclose(sigma_minus, [[0, 1], [0, 0]])


def test_ladder_needs_two_levels():
    with pytest.raises(InvalidArgumentError):
        ladder(1)


def test_embed_places_block_in_canonical_order(feedback_space):
    block = np.array([[0, 1], [0, 0]])
    op = embed(block, 3, feedback_space)
    assert op.dim == 36
    expected = np.kron(np.eye(18), block)
    assert np.allclose(op.matrix, expected)


@pytest.mark.parametrize("index,block", [(4, np.eye(2)), (1, np.eye(2))])
def test_embed_rejects_bad_index_or_shape(feedback_space, index, block):
    with pytest.raises(InvalidArgumentError):
        embed(block, index, feedback_space)


def test_operator_arithmetic_stays_on_space(open_loop_space):
    ops = system_operators(open_loop_space)
    number = ops.a_dag @ ops.a
    assert isinstance(number, Operator)
    assert number.is_hermitian()
    assert np.allclose((2 * ops.proj_x - ops.proj_x).matrix, ops.proj_x.matrix)
    assert np.allclose((-ops.a).matrix, -ops.a.matrix)
    assert np.allclose(ops.sigma_plus.dag().matrix, ops.sigma_minus.matrix)


def test_operator_rejects_mixed_spaces(feedback_space, open_loop_space):
    with pytest.raises(InvalidArgumentError):
        system_operators(feedback_space).a @ system_operators(open_loop_space).a


def test_catalog_without_control(open_loop_space, feedback_space):
    assert system_operators(open_loop_space).xi is None
    ops = system_operators(feedback_space)
    assert np.isclose(np.trace(ops.xi.matrix).real, 18)
    assert np.allclose(ops.c.matrix @ ops.xi.matrix, ops.c.matrix)


def test_basis_index_row_major(feedback_space):
    assert basis_index((1, 2, 1, 0), feedback_space) == 32
    assert basis_index((0, 0, 0, 0), feedback_space) == 0
    assert basis_index((1, 2, 2, 1), feedback_space) == 35


@pytest.mark.parametrize("levels", [(0, 0, 0), (2, 0, 0, 0), (0, 3, 0, 0)])
def test_basis_index_rejects_bad_levels(feedback_space, levels):
    with pytest.raises(InvalidArgumentError):
        basis_index(levels, feedback_space)


def test_partial_trace_of_product_state(feedback_space):
    rho = basis_state((1, 0, 2, 1), feedback_space).matrix
    assert np.allclose(partial_trace(rho, 2, feedback_space), np.diag([0, 0, 1]))
    assert np.allclose(partial_trace(rho, 0, feedback_space), np.diag([0, 1]))
    assert np.allclose(partial_trace(rho, 3, feedback_space), np.diag([0, 1]))


def test_partial_trace_keeps_coherences(open_loop_space):
    psi = np.zeros(18)
    psi[basis_index((0, 0, 0), open_loop_space)] = 1 / np.sqrt(2)
    psi[basis_index((0, 0, 1), open_loop_space)] = 1 / np.sqrt(2)
    bath = partial_trace(np.outer(psi, psi), 2, open_loop_space)
    assert np.allclose(bath, [[0.5, 0.5, 0], [0.5, 0.5, 0], [0, 0, 0]])


def test_partial_trace_requires_space():
    with pytest.raises(InvalidArgumentError):
        partial_trace(np.eye(4), 0)


def test_charge_sector_sizes(feedback_space, open_loop_space):
    assert len(charge_sector(open_loop_space)) == 70
    assert len(charge_sector(feedback_space)) == 140


def test_charge_sector_contains_product_states(feedback_space):
    sector = set(charge_sector(feedback_space).tolist())
    n = feedback_space.total_dim
    for levels in [(0, 0, 0, 1), (1, 1, 0, 0), (0, 2, 1, 1)]:
        i = basis_index(levels, feedback_space)
        assert i * n + i in sector
    # a coherence between different photon numbers sits outside
    i, j = basis_index((0, 0, 0, 1), feedback_space), basis_index((1, 0, 0, 1), feedback_space)
    assert i * n + j not in sector
