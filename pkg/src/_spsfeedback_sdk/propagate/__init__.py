from _spsfeedback_sdk.propagate.evolution import asymptotic_cross_check
from _spsfeedback_sdk.propagate.evolution import asymptotic_projector
from _spsfeedback_sdk.propagate.evolution import asymptotic_readout
from _spsfeedback_sdk.propagate.evolution import asymptotic_state
from _spsfeedback_sdk.propagate.evolution import evolve
from _spsfeedback_sdk.propagate.evolution import sample_two_phase
from _spsfeedback_sdk.propagate.evolution import trace_norm_difference
from _spsfeedback_sdk.propagate.evolution import two_phase_evolve
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SolverOptions
from _spsfeedback_sdk.propagate.models import SpectralDecomposition
from _spsfeedback_sdk.propagate.models import SwitchPlan
from _spsfeedback_sdk.propagate.models import Trajectory
from _spsfeedback_sdk.propagate.rk4 import rk4_evolve
from _spsfeedback_sdk.propagate.spectral import spectral_decompose
from _spsfeedback_sdk.propagate.spectral import spectral_evolve

__all__ = [
    "DensityState",
    "SolverOptions",
    "SpectralDecomposition",
    "SwitchPlan",
    "Trajectory",
    "asymptotic_cross_check",
    "asymptotic_projector",
    "asymptotic_readout",
    "asymptotic_state",
    "evolve",
    "rk4_evolve",
    "sample_two_phase",
    "spectral_decompose",
    "spectral_evolve",
    "trace_norm_difference",
    "two_phase_evolve",
]
