from _spsfeedback_sdk.generator.liouvillian import build_deterministic
from _spsfeedback_sdk.generator.liouvillian import build_feedback
from _spsfeedback_sdk.generator.liouvillian import check_liouvillian
from _spsfeedback_sdk.generator.liouvillian import dissipator
from _spsfeedback_sdk.generator.liouvillian import hamiltonian_part
from _spsfeedback_sdk.generator.liouvillian import jc_hamiltonian
from _spsfeedback_sdk.generator.models import LindbladTerm
from _spsfeedback_sdk.generator.models import LiouvillianDiagnostics
from _spsfeedback_sdk.generator.models import LiouvillianMatrix
from _spsfeedback_sdk.generator.models import ModelParams

__all__ = [
    "LindbladTerm",
    "LiouvillianDiagnostics",
    "LiouvillianMatrix",
    "ModelParams",
    "build_deterministic",
    "build_feedback",
    "check_liouvillian",
    "dissipator",
    "hamiltonian_part",
    "jc_hamiltonian",
]
