from _spsfeedback_sdk.observables.models import EmissionStats
from _spsfeedback_sdk.observables.stats import bath_populations
from _spsfeedback_sdk.observables.stats import control_on_population
from _spsfeedback_sdk.observables.stats import emission_stats
from _spsfeedback_sdk.observables.stats import excited_population
from _spsfeedback_sdk.observables.stats import TRAJECTORY_COLUMNS
from _spsfeedback_sdk.observables.stats import trajectory_rows

__all__ = [
    "EmissionStats",
    "TRAJECTORY_COLUMNS",
    "bath_populations",
    "control_on_population",
    "emission_stats",
    "excited_population",
    "trajectory_rows",
]
