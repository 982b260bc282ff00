from __future__ import annotations

import string
from functools import lru_cache
from functools import reduce
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from pydantic import validator

from _spsfeedback_sdk.algebra.space import SpaceDescriptor
from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.core.models import readonly
from _spsfeedback_sdk.enums import Subsystem
from _spsfeedback_sdk.exceptions import InvalidArgumentError


class Operator(FrozenModel):
    """
    A full-space operator: a complex square matrix whose size matches `space.total_dim`.

    Supports `+`, `-`, scalar `*` and `@` between operators on the same space; every result is a new `Operator`.
    """

    space: SpaceDescriptor
    matrix: np.ndarray

    @validator("matrix", pre=True)
    def _as_complex(cls, value):  # noqa
        return readonly(np.asarray(value, dtype=complex))

    @validator("matrix")
    def _validate_shape(cls, value, values):  # noqa
        space = values.get("space")
        if value.ndim != 2 or value.shape[0] != value.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {value.shape}.")
        if space is not None and value.shape[0] != space.total_dim:
            raise ValueError(
                f"operator dimension {value.shape[0]} does not match space dimension {space.total_dim}."
            )
        return value

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dag(self) -> Operator:
        return Operator(matrix=self.matrix.conj().T, space=self.space)

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0))

    def _check_space(self, other: Operator):
        if other.space.dims != self.space.dims:
            raise InvalidArgumentError(
                f"operators live on different spaces: {self.space.dims} vs {other.space.dims}."
            )

    def __matmul__(self, other: Operator) -> Operator:
        self._check_space(other)
        return Operator(matrix=self.matrix @ other.matrix, space=self.space)

    def __add__(self, other: Operator) -> Operator:
        self._check_space(other)
        return Operator(matrix=self.matrix + other.matrix, space=self.space)

    def __sub__(self, other: Operator) -> Operator:
        self._check_space(other)
        return Operator(matrix=self.matrix - other.matrix, space=self.space)

    def __mul__(self, scalar) -> Operator:
        return Operator(matrix=scalar * self.matrix, space=self.space)

    __rmul__ = __mul__

    def __neg__(self) -> Operator:
        return Operator(matrix=-self.matrix, space=self.space)


def ladder(dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Truncated annihilation and creation blocks on a `dim`-level mode.

    The annihilation block maps |n⟩ → √n |n−1⟩; the creation block is its conjugate transpose, so creation
    annihilates the top level |dim−1⟩. For `dim == 2` the annihilation block is σ⁻ = |G⟩⟨X|.
    """
    if dim < 2:
        raise InvalidArgumentError(f"ladder operators need at least 2 levels, got {dim}.", value=dim)
    annihilation = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)
    return annihilation, annihilation.conj().T


def embed(local: np.ndarray, subsystem_index: int, space: SpaceDescriptor) -> Operator:
    """Embed a single-subsystem block as I ⊗ … ⊗ local ⊗ … ⊗ I in canonical ordering."""
    local = np.asarray(local, dtype=complex)
    if not 0 <= subsystem_index < len(space.dims):
        raise InvalidArgumentError(
            f"subsystem index {subsystem_index} out of range for {len(space.dims)} subsystems.",
            value=subsystem_index,
        )
    expected = space.dims[subsystem_index]
    if local.shape != (expected, expected):
        raise InvalidArgumentError(
            f"block of shape {local.shape} does not fit subsystem {space.labels[subsystem_index]} "
            f"of dimension {expected}.",
            value=local.shape,
        )
    factors = [
        local if i == subsystem_index else np.eye(dim, dtype=complex)
        for i, dim in enumerate(space.dims)
    ]
    return Operator(matrix=reduce(np.kron, factors), space=space)


def partial_trace(rho, keep_index: int, space: SpaceDescriptor = None) -> np.ndarray:
    """
    Reduce a full-space density matrix to the subsystem at `keep_index`.

    `rho` may be a `DensityState` (its own space is used) or a square array together with `space`.
    """
    if hasattr(rho, "to_matrix"):
        space = rho.space
        matrix = rho.to_matrix()
    else:
        matrix = np.asarray(rho, dtype=complex)
    if space is None:
        raise InvalidArgumentError("a space descriptor is required to trace a bare matrix.")
    n = len(space.dims)
    if not 0 <= keep_index < n:
        raise InvalidArgumentError(
            f"subsystem index {keep_index} out of range for {n} subsystems.", value=keep_index
        )
    if matrix.shape != (space.total_dim, space.total_dim):
        raise InvalidArgumentError(
            f"density matrix of shape {matrix.shape} does not match space dimension {space.total_dim}."
        )
    rows = string.ascii_lowercase[:n]
    cols = rows[:keep_index] + "z" + rows[keep_index + 1 :]
    subscripts = f"{rows}{cols}->{rows[keep_index]}z"
    return np.einsum(subscripts, matrix.reshape(space.dims + space.dims))


def basis_index(levels: Sequence[int], space: SpaceDescriptor) -> int:
    """Row-major index of the product basis state with the given per-subsystem levels."""
    levels = tuple(int(level) for level in levels)
    if len(levels) != len(space.dims):
        raise InvalidArgumentError(
            f"expected {len(space.dims)} levels for space {space.dims}, got {levels}.", value=levels
        )
    for level, dim in zip(levels, space.dims):
        if not 0 <= level < dim:
            raise InvalidArgumentError(f"level {level} outside a {dim}-level subsystem.", value=levels)
    return int(np.ravel_multi_index(levels, space.dims))


def basis_state(levels: Sequence[int], space: SpaceDescriptor) -> Operator:
    """Pure projector |ψ⟩⟨ψ| onto the product basis state with the given per-subsystem levels."""
    index = basis_index(levels, space)
    matrix = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    matrix[index, index] = 1.0
    return Operator(matrix=matrix, space=space)


@lru_cache(maxsize=16)
def _charges(dims: Tuple[int, ...], labels: Tuple[str, ...]) -> np.ndarray:
    levels = np.indices(dims).reshape(len(dims), -1)
    control = labels.index(Subsystem.CONTROL.value) if Subsystem.CONTROL.value in labels else None
    quanta = sum(levels[i] for i in range(len(dims)) if i != control)
    on = levels[control] if control is not None else np.zeros_like(quanta)
    return np.stack([quanta, on], axis=1)


@lru_cache(maxsize=16)
def _sector(dims: Tuple[int, ...], labels: Tuple[str, ...]) -> np.ndarray:
    charges = _charges(dims, labels)
    same = np.all(charges[:, None, :] == charges[None, :, :], axis=-1)
    return readonly(np.flatnonzero(same.reshape(-1)))


def charge_sector(space: SpaceDescriptor) -> np.ndarray:
    """
    Indices into vec(ρ) (row-major) whose row and column basis states carry equal charges.

    The charge of a basis state is the pair (dot + cavity + bath quanta, control level). Every Lindblad operator
    and the Jaynes-Cummings Hamiltonian shift both charges by fixed amounts, so the charge-diagonal block of vec(ρ)
    is invariant under all generators built by this package and product basis states start inside it.
    """
    return _sector(space.dims, space.labels)


class SystemOperators(FrozenModel):
    """
    Named full-space operators for one `SpaceDescriptor`.

    `xi` (projector on control |1⟩) and `c` (control annihilation) are `None` when the space has no control mode.
    """

    space: SpaceDescriptor
    identity: Operator
    sigma_plus: Operator
    sigma_minus: Operator
    proj_x: Operator
    a: Operator
    a_dag: Operator
    b: Operator
    b_dag: Operator
    xi: Optional[Operator] = None
    c: Optional[Operator] = None


_catalog_cache = {}


def system_operators(space: SpaceDescriptor) -> SystemOperators:
    """Build (or fetch from cache) the operator catalog (σ±, 𝒫_X, a, a†, b, b†, ξ, c) on `space`."""
    key = (space.dims, space.labels)
    if key not in _catalog_cache:
        _catalog_cache[key] = _build_catalog(space)
    return _catalog_cache[key]


def _build_catalog(space: SpaceDescriptor) -> SystemOperators:
    dot = space.index_of(Subsystem.DOT)
    cavity = space.index_of(Subsystem.CAVITY)
    bath = space.index_of(Subsystem.BATH)
    control = space.index_of(Subsystem.CONTROL)
    if None in (dot, cavity, bath):
        raise InvalidArgumentError(
            f"space {space.labels} must contain dot, cavity and bath subsystems.", value=space.labels
        )
    sigma_minus, sigma_plus = ladder(space.dims[dot])
    a, a_dag = ladder(space.dims[cavity])
    b, b_dag = ladder(space.dims[bath])
    proj_x = np.zeros((space.dims[dot],) * 2, dtype=complex)
    proj_x[1, 1] = 1.0

    ops = dict(
        space=space,
        identity=Operator(matrix=np.eye(space.total_dim), space=space),
        sigma_plus=embed(sigma_plus, dot, space),
        sigma_minus=embed(sigma_minus, dot, space),
        proj_x=embed(proj_x, dot, space),
        a=embed(a, cavity, space),
        a_dag=embed(a_dag, cavity, space),
        b=embed(b, bath, space),
        b_dag=embed(b_dag, bath, space),
    )
    if control is not None:
        c, _ = ladder(space.dims[control])
        xi = np.zeros((space.dims[control],) * 2, dtype=complex)
        xi[1, 1] = 1.0
        ops.update(c=embed(c, control, space), xi=embed(xi, control, space))
    return SystemOperators(**ops)
