from typing import List
from typing import Optional

import numpy as np
from pydantic import Field
from pydantic import validator

from _spsfeedback_sdk.algebra.operators import Operator
from _spsfeedback_sdk.algebra.space import SpaceDescriptor
from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.core.models import readonly
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.exceptions import InvalidArgumentError


class ModelParams(FrozenModel):
    """
    Physical rates of the dot-cavity-bath-control model, all in units of the cavity leakage rate κ.

    Defaults reproduce the open-loop example (Ω = g = 0.1, Γ = 0.001, κ = 1, no measurement).

    **Fields**:

    * **omega**: `float` - Pump rate Ω.
    * **g**: `float` - Dot-cavity coupling.
    * **gamma_sp**: `float` - Spontaneous emission rate Γ into non-cavity modes.
    * **gamma_meas**: `float` - Measurement-induced dephasing rate γ.
    * **kappa**: `float` - Cavity to bath leakage rate. Fixed to 1 in the studied regime.
    * **nu1**: `float` - Control switch-off rate with the dot excited.
    * **nu0**: `float` - Control switch-off rate with the dot in the ground state.
    * **eta**: `float` - Measurement efficiency.
    * **dt_window**: `float` - Averaging window Δt of the measurement signal (units 1/κ).
    * **tau**: `Optional[float]` - Threshold τ on the averaged signal, when known.
    """

    omega: float = Field(0.1, ge=0)
    g: float = Field(0.1, ge=0)
    gamma_sp: float = Field(0.001, ge=0)
    gamma_meas: float = Field(0.0, ge=0)
    kappa: float = Field(1.0, ge=0)
    nu1: float = Field(0.0, ge=0)
    nu0: float = Field(0.0, ge=0)
    eta: float = Field(1.0, gt=0, le=1)
    dt_window: float = Field(0.1, gt=0)
    tau: Optional[float] = Field(None, ge=0)

    def regime_warnings(self) -> List[str]:
        """
        Orderings of Γ ≪ ν₀ < Ω, g < ν₁ ≤ γ, κ that these parameters violate.

        Only meaningful for feedback models; an empty list means the parameters sit inside the regime where
        threshold switching is expected to help.
        """
        found = []
        if not self.gamma_sp * 10 <= self.nu0:
            found.append(f"Γ={self.gamma_sp:g} is not much smaller than ν₀={self.nu0:g}")
        for name, value in (("Ω", self.omega), ("g", self.g)):
            if not self.nu0 < value:
                found.append(f"ν₀={self.nu0:g} is not below {name}={value:g}")
            if not value < self.nu1:
                found.append(f"{name}={value:g} is not below ν₁={self.nu1:g}")
        for name, value in (("γ", self.gamma_meas), ("κ", self.kappa)):
            if not self.nu1 <= value:
                found.append(f"ν₁={self.nu1:g} exceeds {name}={value:g}")
        return found


class LindbladTerm(FrozenModel):
    """A single dissipative channel α_k 𝓗[L_k]."""

    name: str = ""
    rate: float = Field(..., ge=0)
    operator: Operator


class LiouvillianMatrix(FrozenModel):
    """
    A GKSL generator acting on row-major vectorized density matrices.

    When `sector` is set the matrix is the restriction of the full N² × N² generator to those vec(ρ) indices, which
    must form an invariant subspace (see `charge_sector`).

    **Fields**:

    * **matrix**: `np.ndarray` - Complex square superoperator.
    * **phase**: `Pumping` - Whether this is the pumping-on or pumping-off generator.
    * **space**: `SpaceDescriptor` - The Hilbert space the generator acts on.
    * **sector**: `Optional[np.ndarray]` - Indices of the retained vec(ρ) components, or `None` for the full space.
    """

    matrix: np.ndarray
    phase: Pumping = Pumping.ON
    space: SpaceDescriptor
    sector: Optional[np.ndarray] = None

    @validator("matrix", pre=True)
    def _as_complex(cls, value):  # noqa
        value = readonly(np.asarray(value, dtype=complex))
        if value.ndim != 2 or value.shape[0] != value.shape[1]:
            raise ValueError(f"generator must be square, got shape {value.shape}.")
        return value

    @validator("sector", pre=True)
    def _as_indices(cls, value):  # noqa
        return None if value is None else readonly(np.asarray(value, dtype=np.intp))

    def __init__(self, **data):
        super().__init__(**data)
        expected = self.space.total_dim**2 if self.sector is None else len(self.sector)
        if self.matrix.shape[0] != expected:
            raise InvalidArgumentError(
                f"generator of size {self.matrix.shape[0]} does not match the expected {expected}."
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_restricted(self) -> bool:
        return self.sector is not None

    def trace_row(self) -> np.ndarray:
        """vec(I) in this generator's coordinates: the linear functional ρ ↦ Tr ρ."""
        n = self.space.total_dim
        row = np.eye(n, dtype=complex).reshape(-1)
        return row if self.sector is None else row[self.sector]

    def restrict(self, sector: np.ndarray) -> "LiouvillianMatrix":
        """Restrict a full-space generator to the vec(ρ) indices in `sector`."""
        if self.sector is not None:
            raise InvalidArgumentError("generator is already restricted to a sector.")
        sector = np.asarray(sector, dtype=np.intp)
        return LiouvillianMatrix(
            matrix=self.matrix[np.ix_(sector, sector)],
            phase=self.phase,
            space=self.space,
            sector=sector,
        )

    def to_local(self, vec: np.ndarray) -> np.ndarray:
        """Map a full-length vec(ρ) into this generator's coordinates."""
        return vec if self.sector is None else vec[self.sector]

    def to_full(self, local: np.ndarray) -> np.ndarray:
        """Scatter a vector in this generator's coordinates back to a full-length vec(ρ)."""
        if self.sector is None:
            return local
        full = np.zeros(self.space.total_dim**2, dtype=complex)
        full[self.sector] = local
        return full


class LiouvillianDiagnostics(FrozenModel):
    """Invariant residuals of a built generator."""

    trace_residual: float
    spectral_abscissa: Optional[float] = None
