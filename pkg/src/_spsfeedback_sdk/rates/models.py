import math
from typing import Optional

from pydantic import Field

from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.exceptions import InvalidArgumentError

# the first-order tail expansions need T ≫ 1
MIN_ASYMPTOTIC_T = 3.0


class MeasurementModel(FrozenModel):
    """
    Constants of the continuously measured excited-state projector.

    The signal averaged over a window Δt is Gaussian with mean μΔt and variance Δt/(ηγ), so every threshold
    probability depends on the product ηγΔt and on the normalized threshold T = τ/Δt.

    **Fields**:

    * **eta**: `float` - Measurement efficiency η in (0, 1].
    * **gamma_meas**: `float` - Measurement rate γ (units κ).
    * **dt_window**: `float` - Averaging window Δt (units 1/κ).
    * **tau**: `Optional[float]` - Threshold τ; `None` until derived from ν₁.
    """

    eta: float = Field(1.0, gt=0, le=1)
    gamma_meas: float = Field(..., ge=0)
    dt_window: float = Field(0.1, gt=0)
    tau: Optional[float] = Field(None, ge=0)

    @classmethod
    def from_params(cls, params, tau: float = None) -> "MeasurementModel":
        """Take η, γ, Δt (and τ unless overridden) from a `ModelParams`."""
        return cls(
            eta=params.eta,
            gamma_meas=params.gamma_meas,
            dt_window=params.dt_window,
            tau=params.tau if tau is None else tau,
        )

    def with_tau(self, tau: float) -> "MeasurementModel":
        return self.copy(update={"tau": tau})

    @property
    def strength(self) -> float:
        """The dimensionless product ηγΔt."""
        return self.eta * self.gamma_meas * self.dt_window

    @property
    def beta(self) -> float:
        """Noise scale (ηγ)^(-1/2) of the raw signal."""
        rate = self.eta * self.gamma_meas
        return math.inf if rate == 0 else rate**-0.5

    @property
    def T_big(self) -> float:
        """Normalized threshold T = τ/Δt."""
        if self.tau is None:
            raise InvalidArgumentError("the measurement model has no threshold τ yet.")
        return self.tau / self.dt_window

    @property
    def asymptotics_valid(self) -> bool:
        return self.tau is not None and self.T_big >= MIN_ASYMPTOTIC_T
