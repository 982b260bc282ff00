from _spsfeedback_sdk.algebra.operators import basis_index
from _spsfeedback_sdk.algebra.operators import basis_state
from _spsfeedback_sdk.algebra.operators import charge_sector
from _spsfeedback_sdk.algebra.operators import embed
from _spsfeedback_sdk.algebra.operators import ladder
from _spsfeedback_sdk.algebra.operators import Operator
from _spsfeedback_sdk.algebra.operators import partial_trace
from _spsfeedback_sdk.algebra.operators import system_operators
from _spsfeedback_sdk.algebra.operators import SystemOperators
from _spsfeedback_sdk.algebra.space import DEFAULT_DIMS
from _spsfeedback_sdk.algebra.space import DETERMINISTIC_DIMS
from _spsfeedback_sdk.algebra.space import make_space
from _spsfeedback_sdk.algebra.space import SpaceDescriptor

__all__ = [
    "DEFAULT_DIMS",
    "DETERMINISTIC_DIMS",
    "Operator",
    "SpaceDescriptor",
    "SystemOperators",
    "basis_index",
    "basis_state",
    "charge_sector",
    "embed",
    "ladder",
    "make_space",
    "partial_trace",
    "system_operators",
]
