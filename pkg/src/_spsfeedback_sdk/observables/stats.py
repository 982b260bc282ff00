import math
from typing import Dict
from typing import List

import numpy as np
from pydantic import ValidationError

from _spsfeedback_sdk.algebra.operators import partial_trace
from _spsfeedback_sdk.enums import Subsystem
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import PositivityViolationError
from _spsfeedback_sdk.observables.models import EmissionStats
from _spsfeedback_sdk.observables.models import PROBABILITY_TOLERANCE
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import Trajectory

TRAJECTORY_COLUMNS = ["time", "p0", "p1", "p2plus", "pX", "pcontrol_on", "trace_error"]


def _checked(value: float, name: str) -> float:
    if not -PROBABILITY_TOLERANCE <= value <= 1 + PROBABILITY_TOLERANCE:
        raise PositivityViolationError(f"{name}={value:.12g} is outside [0, 1].", value=value)
    return value


def _subsystem_index(rho: DensityState, subsystem: Subsystem) -> int:
    index = rho.space.index_of(subsystem)
    if index is None:
        raise InvalidArgumentError(
            f"space {rho.space.labels} has no {subsystem.value} subsystem.", value=rho.space.labels
        )
    return index


def _level_population(rho: DensityState, subsystem: Subsystem, level: int) -> float:
    marginal = partial_trace(rho, _subsystem_index(rho, subsystem))
    return _checked(float(marginal[level, level].real), f"{subsystem.value} level {level} population")


def bath_populations(rho: DensityState) -> np.ndarray:
    """Diagonal of the bath marginal in the Fock basis."""
    marginal = partial_trace(rho, _subsystem_index(rho, Subsystem.BATH))
    return np.diag(marginal).real


def emission_stats(rho: DensityState) -> EmissionStats:
    """
    p(0), p(1) and p(2+) from the bath marginal of `rho`.

    Raises `PositivityViolationError` when any raw value leaves [−1e-9, 1 + 1e-9] or they fail to sum to 1.
    """
    populations = bath_populations(rho)
    p0, p1 = _checked(populations[0], "p0"), _checked(populations[1], "p1")
    p2plus = _checked(float(populations[2:].sum()), "p2plus")
    try:
        return EmissionStats(
            p0=p0,
            p1=p1,
            p2plus=p2plus,
            source_time="asymptotic" if math.isinf(rho.time) else rho.time,
        )
    except ValidationError as err:
        raise PositivityViolationError(str(err))


def excited_population(rho: DensityState) -> float:
    """⟨𝒫_X⟩ = Tr(𝒫_X ρ)."""
    return _level_population(rho, Subsystem.DOT, 1)


def control_on_population(rho: DensityState) -> float:
    """Tr(ξρ), the probability that pumping is still switched on."""
    return _level_population(rho, Subsystem.CONTROL, 1)


def trajectory_rows(trajectory: Trajectory) -> List[Dict[str, float]]:
    """One row per sample: time, p0, p1, p2plus, pX, pcontrol_on (None without control) and trace_error."""
    has_control = trajectory.space.has_control
    rows = []
    for state in trajectory.states():
        stats = emission_stats(state)
        rows.append(
            {
                "time": state.time,
                "p0": stats.p0,
                "p1": stats.p1,
                "p2plus": stats.p2plus,
                "pX": excited_population(state),
                "pcontrol_on": control_on_population(state) if has_control else None,
                "trace_error": abs(state.trace() - 1.0),
            }
        )
    return rows
