from typing import Dict
from typing import List
from typing import Optional

from _spsfeedback_sdk.core.models import Model


class FigurePoint(Model):
    """One plotted coordinate next to the value computed for it, with the search-grid edges its optimum sits on."""

    curve: str
    x: float
    expected: float
    actual: float
    deviation: float
    grid_edges: str = ""


class FigureReport(Model):
    """
    Comparison of a reproduced figure against the published coordinates.

    **Fields**:

    * **figure**: `int` - 3, 4 or 5.
    * **epsilon**: `Optional[float]` - Multi-photon cap used for the optimizations.
    * **points**: `List[FigurePoint]` - Per-point deviations (empty for figure 3).
    * **max_deviation**: `float` - Largest absolute deviation.
    * **tolerance**: `float` - Absolute tolerance each point is held to.
    * **within_tolerance**: `bool` - Whether every point is within `tolerance`.
    * **checks**: `Dict[str, bool]` - Qualitative shape and ordering checks by name.
    """

    figure: int
    epsilon: Optional[float] = None
    points: List[FigurePoint] = []
    max_deviation: float = 0.0
    tolerance: float
    within_tolerance: bool = True
    checks: Dict[str, bool] = {}
