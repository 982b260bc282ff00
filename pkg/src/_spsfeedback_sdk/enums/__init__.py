import enum as _enum


class _Enum(str, _enum.Enum):
    """
    An `enum.Enum` subclass that enables string comparison (`Enum.MEMBER == "MEMBER"`) and better exceptions that show
    all possible values.
    """

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            for member in cls:
                if member.value == value.lower():
                    return member
        raise ValueError(
            f"'{value}' is not a valid {cls.__name__}. Expected one of {[member.value for member in cls]}"
        )


class Subsystem(_Enum):
    DOT = "dot"
    CAVITY = "cavity"
    BATH = "bath"
    CONTROL = "control"


class Pumping(_Enum):
    ON = "on"
    OFF = "off"


class Mode(_Enum):
    DETERMINISTIC = "deterministic"
    THRESHOLD = "threshold"


class Method(_Enum):
    SPECTRAL = "spectral"
    RK4 = "rk4"


class Branch(_Enum):
    """Which case of the constrained optimum fired."""

    # deterministic: p2 reached epsilon before p1 peaked
    CONSTRAINT_LIMITED = "constraint_limited"
    # deterministic: p1 peaked first
    INTERIOR_MAX = "interior_max"
    # threshold: unconstrained joint argmax already satisfies the cap
    UNCONSTRAINED = "unconstrained"
    # threshold: best of p1 along the p2 = epsilon frontier
    CONSTRAINT_SATURATED = "constraint_saturated"
    # no grid point met the cap
    INFEASIBLE = "infeasible"
