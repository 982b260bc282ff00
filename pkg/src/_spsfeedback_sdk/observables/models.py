from typing import Optional
from typing import Union

from pydantic import Field
from pydantic import root_validator

from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.propagate.models import Trajectory

PROBABILITY_TOLERANCE = 1e-9


class EmissionStats(FrozenModel):
    """
    Photon-number distribution of the bath mode.

    **Fields**:

    * **p0**: `float` - Probability that no photon was emitted.
    * **p1**: `float` - Probability of exactly one photon.
    * **p2plus**: `float` - Probability of two or more photons (the top bath level).
    * **source_time**: `Union[float, str]` - Time of the state the numbers were read from, or `"asymptotic"`.
    """

    p0: float = Field(..., ge=-PROBABILITY_TOLERANCE, le=1 + PROBABILITY_TOLERANCE)
    p1: float = Field(..., ge=-PROBABILITY_TOLERANCE, le=1 + PROBABILITY_TOLERANCE)
    p2plus: float = Field(..., ge=-PROBABILITY_TOLERANCE, le=1 + PROBABILITY_TOLERANCE)
    source_time: Union[float, str] = "asymptotic"

    @root_validator(skip_on_failure=True)
    def _normalized(cls, values):  # noqa
        total = values["p0"] + values["p1"] + values["p2plus"]
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f"emission probabilities sum to {total:.12g}, not 1.")
        return values


class SimulationDiagnostics(FrozenModel):
    """
    Numerical health of one simulation.

    **Fields**:

    * **trace_error**: `float` - Largest |Tr ρ − 1| over the emitted trajectory.
    * **method_residual**: `Optional[float]` - Trace-norm gap between the chosen propagator and RK4 at T_s.
    * **method**: `Method` - Propagator that produced the trajectory after any fallback.
    """

    trace_error: float
    method_residual: Optional[float] = None
    method: Method


class SimulationResult(FrozenModel):
    """
    Outcome of a two-phase run: pump until T_s, then let the system relax.

    **Fields**:

    * **params**: `ModelParams` - Rates used for both phases.
    * **mode**: `Mode` - `deterministic` (open loop) or `threshold` (feedback).
    * **t_switch**: `float` - Stopping time T_s.
    * **at_switch**: `EmissionStats` - Bath populations at T_s.
    * **asymptotic**: `EmissionStats` - Bath populations after full relaxation.
    * **excited_at_switch**: `float` - ⟨𝒫_X⟩ at T_s.
    * **control_on_at_switch**: `Optional[float]` - Tr(ξρ) at T_s for feedback runs.
    * **diagnostics**: `SimulationDiagnostics`
    * **trajectory**: `Trajectory` - Sampled states across both phases.
    """

    params: ModelParams
    mode: Mode
    t_switch: float
    at_switch: EmissionStats
    asymptotic: EmissionStats
    excited_at_switch: float
    control_on_at_switch: Optional[float] = None
    diagnostics: SimulationDiagnostics
    trajectory: Trajectory
