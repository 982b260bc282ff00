from functools import reduce
from operator import mul
from typing import Optional
from typing import Sequence
from typing import Tuple

from pydantic import Field
from pydantic import root_validator
from pydantic import validator
from pydantic import ValidationError

from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.enums import Subsystem
from _spsfeedback_sdk.exceptions import InvalidArgumentError

CANONICAL_ORDER = (
    Subsystem.DOT,
    Subsystem.CAVITY,
    Subsystem.BATH,
    Subsystem.CONTROL,
)
DEFAULT_DIMS = (2, 3, 3, 2)
# the control subsystem is dropped for open-loop pumping
DETERMINISTIC_DIMS = (2, 3, 3)


class SpaceDescriptor(FrozenModel):
    """
    The composite Hilbert space dot ⊗ cavity ⊗ bath ⊗ control, truncated per mode.

    Basis states are ordered row-major over `dims`, so the level tuple `(d, n_cav, n_bath, c)` sits at index
    `((d * 3 + n_cav) * 3 + n_bath) * 2 + c` for the default space.

    **Fields**:

    * **dims**: `Tuple[int, ...]` - Subsystem dimensions in canonical order. Defaults to `(2, 3, 3, 2)`.
    * **labels**: `Tuple[str, ...]` - Subsystem names, derived from the canonical order when omitted.
    """

    dims: Tuple[int, ...] = Field(default=DEFAULT_DIMS)
    labels: Tuple[str, ...] = None

    @validator("dims")
    def _validate_dims(cls, value):  # noqa
        if len(value) == 0:
            raise ValueError("at least one subsystem dimension is required.")
        for dim in value:
            if dim < 1:
                raise ValueError(f"subsystem dimensions must be positive, got {dim}.")
        return tuple(int(d) for d in value)

    @root_validator(skip_on_failure=True)
    def _default_labels(cls, values):  # noqa
        dims = values["dims"]
        labels = values.get("labels")
        if labels is None:
            labels = tuple(
                CANONICAL_ORDER[i].value if i < len(CANONICAL_ORDER) else f"mode{i}"
                for i in range(len(dims))
            )
        elif len(labels) != len(dims):
            raise ValueError(f"got {len(labels)} labels for {len(dims)} subsystems.")
        values["labels"] = tuple(labels)
        return values

    @property
    def total_dim(self) -> int:
        return reduce(mul, self.dims, 1)

    def index_of(self, subsystem: Subsystem) -> Optional[int]:
        """Position of `subsystem` in the tensor ordering, or `None` when the space lacks it."""
        name = Subsystem(subsystem).value
        return self.labels.index(name) if name in self.labels else None

    @property
    def has_control(self) -> bool:
        return self.index_of(Subsystem.CONTROL) is not None

    def __len__(self):
        return len(self.dims)


def make_space(dims: Sequence[int] = DEFAULT_DIMS) -> SpaceDescriptor:
    """
    Build a `SpaceDescriptor` for the given subsystem dimensions in canonical (dot, cavity, bath, control) order.

    >>> make_space([2, 3, 3, 2]).total_dim
    36
    >>> make_space([2, 3, 3]).total_dim
    18
    """
    try:
        return SpaceDescriptor(dims=tuple(dims))
    except ValidationError as err:
        raise InvalidArgumentError(str(err), value=dims)
