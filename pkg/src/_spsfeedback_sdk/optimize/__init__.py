from _spsfeedback_sdk.optimize.curves import find_t_epsilon
from _spsfeedback_sdk.optimize.curves import find_t_max
from _spsfeedback_sdk.optimize.curves import p_curves
from _spsfeedback_sdk.optimize.models import Curves
from _spsfeedback_sdk.optimize.models import GridTask
from _spsfeedback_sdk.optimize.models import OptimizationConfig
from _spsfeedback_sdk.optimize.models import OptResult
from _spsfeedback_sdk.optimize.models import SweepPoint
from _spsfeedback_sdk.optimize.parallel import ordered_map
from _spsfeedback_sdk.optimize.search import calibrate_epsilon
from _spsfeedback_sdk.optimize.search import optimal_deterministic
from _spsfeedback_sdk.optimize.search import optimal_threshold
from _spsfeedback_sdk.optimize.search import unconstrained_epsilon
from _spsfeedback_sdk.optimize.sweeps import sweep_coupling
from _spsfeedback_sdk.optimize.sweeps import sweep_pumping

__all__ = [
    "Curves",
    "GridTask",
    "OptResult",
    "OptimizationConfig",
    "SweepPoint",
    "calibrate_epsilon",
    "find_t_epsilon",
    "find_t_max",
    "optimal_deterministic",
    "optimal_threshold",
    "ordered_map",
    "p_curves",
    "sweep_coupling",
    "sweep_pumping",
    "unconstrained_epsilon",
]
