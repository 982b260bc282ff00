from _spsfeedback_sdk.algebra.operators import Operator
from _spsfeedback_sdk.algebra.space import SpaceDescriptor
from _spsfeedback_sdk.figures.models import FigurePoint
from _spsfeedback_sdk.figures.models import FigureReport
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.observables.models import EmissionStats
from _spsfeedback_sdk.observables.models import SimulationDiagnostics
from _spsfeedback_sdk.observables.models import SimulationResult
from _spsfeedback_sdk.optimize.models import Curves
from _spsfeedback_sdk.optimize.models import OptimizationConfig
from _spsfeedback_sdk.optimize.models import OptResult
from _spsfeedback_sdk.optimize.models import SweepPoint
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SolverOptions
from _spsfeedback_sdk.propagate.models import SpectralDecomposition
from _spsfeedback_sdk.propagate.models import SwitchPlan
from _spsfeedback_sdk.propagate.models import Trajectory
from _spsfeedback_sdk.rates.models import MeasurementModel

__all__ = [
    "Curves",
    "DensityState",
    "EmissionStats",
    "FigurePoint",
    "FigureReport",
    "LiouvillianMatrix",
    "MeasurementModel",
    "ModelParams",
    "Operator",
    "OptimizationConfig",
    "OptResult",
    "SimulationDiagnostics",
    "SimulationResult",
    "SolverOptions",
    "SpaceDescriptor",
    "SpectralDecomposition",
    "SwitchPlan",
    "SweepPoint",
    "Trajectory",
]
