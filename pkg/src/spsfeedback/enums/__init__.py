from _spsfeedback_sdk.enums import Branch
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.enums import Subsystem

__all__ = ["Branch", "Method", "Mode", "Pumping", "Subsystem"]
