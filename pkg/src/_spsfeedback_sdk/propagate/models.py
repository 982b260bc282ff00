from typing import Any
from typing import Iterator
from typing import Optional
from typing import Sequence

import numpy as np
from pydantic import Field
from pydantic import root_validator
from pydantic import validator

from _spsfeedback_sdk.algebra.operators import basis_state
from _spsfeedback_sdk.algebra.space import SpaceDescriptor
from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.core.models import readonly
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Subsystem
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.exceptions import PositivityViolationError
from _spsfeedback_sdk.generator.models import LiouvillianMatrix

TRACE_TOLERANCE = 1e-9
HERMITIAN_TOLERANCE = 1e-9
POSITIVITY_TOLERANCE = 1e-8


class SolverOptions(FrozenModel):
    """
    Numerical knobs shared by every propagation and optimization routine.

    `SimulatorSettings.solver_options()` builds one from the active settings; it is a plain picklable model so it
    can be shipped to worker processes.

    **Fields**:

    * **rk4_dt**: `float` - Runge-Kutta step (units 1/κ).
    * **condition_limit**: `float` - Eigenvector condition number above which a decomposition is defective-suspect.
    * **stable_tolerance**: `float` - |Re λ| (relative to the generator scale) below which a mode is stable.
    * **use_sector_reduction**: `bool` - Work on the charge-diagonal sector instead of the full N² space.
    * **validate_cross_method**: `bool` - Re-run propagations with RK4 and report the residual.
    * **keep_measurement_after_stop**: `bool` - Keep γ, ν₀, ν₁ active after T_s.
    * **use_approx_rates**: `bool` - Derive (τ, ν₀) from ν₁ with the closed forms.
    """

    rk4_dt: float = Field(1e-3, gt=0)
    condition_limit: float = Field(1e10, gt=1)
    stable_tolerance: float = Field(1e-10, gt=0)
    use_sector_reduction: bool = True
    validate_cross_method: bool = False
    keep_measurement_after_stop: bool = False
    use_approx_rates: bool = False


class DensityState(FrozenModel):
    """
    A density matrix in row-major vectorized form.

    **Fields**:

    * **vec**: `np.ndarray` - Complex vector of length N², `vec[i * N + j] = ρ[i, j]`.
    * **space**: `SpaceDescriptor` - The space ρ lives on.
    * **time**: `float` - Time stamp (units 1/κ).
    """

    space: SpaceDescriptor
    vec: np.ndarray
    time: float = 0.0

    @validator("vec", pre=True)
    def _as_complex(cls, value):  # noqa
        return readonly(np.asarray(value, dtype=complex).reshape(-1))

    @validator("vec")
    def _validate_length(cls, value, values):  # noqa
        space = values.get("space")
        if space is not None and value.shape[0] != space.total_dim**2:
            raise ValueError(f"vectorized state of length {value.shape[0]} does not match N² = {space.total_dim**2}.")
        return value

    @classmethod
    def from_matrix(cls, matrix, space: SpaceDescriptor, time: float = 0.0) -> "DensityState":
        return cls(vec=np.asarray(matrix, dtype=complex).reshape(-1), space=space, time=time)

    @classmethod
    def from_levels(cls, levels: Sequence[int], space: SpaceDescriptor, time: float = 0.0) -> "DensityState":
        """Pure product basis state |l₀, l₁, …⟩⟨l₀, l₁, …|."""
        return cls.from_matrix(basis_state(levels, space).matrix, space, time)

    @classmethod
    def initial(cls, space: SpaceDescriptor) -> "DensityState":
        """The pumping start state |G,0,0⟩, or |G,0,0,1⟩ (control ON) when the space has a control mode."""
        levels = [0] * len(space.dims)
        if space.has_control:
            levels[space.index_of(Subsystem.CONTROL)] = 1
        return cls.from_levels(levels, space)

    def to_matrix(self) -> np.ndarray:
        n = self.space.total_dim
        return self.vec.reshape(n, n)

    def trace(self) -> complex:
        return complex(np.trace(self.to_matrix()))

    def with_time(self, time: float) -> "DensityState":
        return self.copy(update={"time": time})

    def validate_state(self) -> "DensityState":
        """
        Check unit trace, Hermiticity and positivity. Returns `self` so calls can be chained.

        Raises `NumericError` on trace or Hermiticity failures and `PositivityViolationError` on a negative eigenvalue.
        """
        matrix = self.to_matrix()
        trace_error = abs(np.trace(matrix) - 1.0)
        if trace_error > TRACE_TOLERANCE:
            raise NumericError(f"state at t={self.time:g} has trace error {trace_error:.3e}.")
        asymmetry = float(np.abs(matrix - matrix.conj().T).max())
        if asymmetry > HERMITIAN_TOLERANCE:
            raise NumericError(f"state at t={self.time:g} is not Hermitian (deviation {asymmetry:.3e}).")
        lowest = float(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))[0])
        if lowest < -POSITIVITY_TOLERANCE:
            raise PositivityViolationError(
                f"state at t={self.time:g} has a negative eigenvalue {lowest:.3e}.", value=lowest
            )
        return self


class SpectralDecomposition(FrozenModel):
    """
    Right eigenpairs of a generator plus an LU factorization of the eigenvector matrix.

    Coefficients of a state are `lu_solve(lu, vec)`; the decomposition is defective-suspect when the eigenvector
    condition number exceeds the configured limit, and then refuses to propagate.
    """

    generator: LiouvillianMatrix
    eigenvalues: np.ndarray
    vectors: np.ndarray
    lu: Any = None
    condition: float
    defective: bool = False

    @validator("eigenvalues", "vectors", pre=True)
    def _as_complex(cls, value):  # noqa
        return readonly(np.asarray(value, dtype=complex))

    @property
    def spectral_abscissa(self) -> float:
        return float(self.eigenvalues.real.max())


class SwitchPlan(FrozenModel):
    """
    A pumping-on generator followed, from `t_switch` onwards, by a pumping-off generator.

    **Fields**:

    * **generator_on**: `LiouvillianMatrix` - Generator while pumping.
    * **generator_off**: `LiouvillianMatrix` - Generator after the forced stop.
    * **t_switch**: `float` - Stopping time T_s (units 1/κ).
    """

    generator_on: LiouvillianMatrix
    generator_off: LiouvillianMatrix
    t_switch: float = Field(..., ge=0)

    @root_validator(skip_on_failure=True)
    def _same_coordinates(cls, values):  # noqa
        on, off = values["generator_on"], values["generator_off"]
        if on.space.dims != off.space.dims:
            raise ValueError(f"generators act on different spaces: {on.space.dims} vs {off.space.dims}.")
        if on.is_restricted != off.is_restricted or (
            on.is_restricted and not np.array_equal(on.sector, off.sector)
        ):
            raise ValueError("generators must share the same coordinates (both full or both on one sector).")
        return values


class Trajectory(FrozenModel):
    """
    Density states sampled at increasing times.

    **Fields**:

    * **space**: `SpaceDescriptor` - The space of every sample.
    * **times**: `np.ndarray` - Sample times, nondecreasing.
    * **vecs**: `np.ndarray` - One full-length vectorized state per row.
    * **method**: `Method` - Propagator that produced the samples (after any fallback).
    * **t_switch**: `Optional[float]` - Generator swap time for two-phase trajectories.
    """

    space: SpaceDescriptor
    times: np.ndarray
    vecs: np.ndarray
    method: Method = Method.SPECTRAL
    t_switch: Optional[float] = None

    @validator("times", pre=True)
    def _as_times(cls, value):  # noqa
        value = readonly(np.asarray(value, dtype=float).reshape(-1))
        if value.size and np.any(np.diff(value) < 0):
            raise ValueError("trajectory times must be nondecreasing.")
        return value

    @validator("vecs", pre=True)
    def _as_vecs(cls, value):  # noqa
        return readonly(np.atleast_2d(np.asarray(value, dtype=complex)))

    @root_validator(skip_on_failure=True)
    def _matching_rows(cls, values):  # noqa
        if values["vecs"].shape[0] != values["times"].shape[0]:
            raise ValueError(
                f"{values['vecs'].shape[0]} states do not match {values['times'].shape[0]} sample times."
            )
        return values

    def __len__(self):
        return self.times.shape[0]

    def states(self) -> Iterator[DensityState]:
        for i in range(len(self)):
            yield self.state(i)

    def state(self, i: int) -> DensityState:
        return DensityState(vec=self.vecs[i], space=self.space, time=float(self.times[i]))

    @property
    def final(self) -> DensityState:
        if not len(self):
            raise InvalidArgumentError("trajectory is empty.")
        return self.state(len(self) - 1)
