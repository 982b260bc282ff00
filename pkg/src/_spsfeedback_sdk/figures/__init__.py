from _spsfeedback_sdk.figures.jobs import anchor_epsilon
from _spsfeedback_sdk.figures.jobs import figure3
from _spsfeedback_sdk.figures.jobs import figure3_rows
from _spsfeedback_sdk.figures.jobs import figure4
from _spsfeedback_sdk.figures.jobs import figure5
from _spsfeedback_sdk.figures.jobs import figure_report
from _spsfeedback_sdk.figures.jobs import FIGURES
from _spsfeedback_sdk.figures.models import FigurePoint
from _spsfeedback_sdk.figures.models import FigureReport

__all__ = [
    "FIGURES",
    "FigurePoint",
    "FigureReport",
    "anchor_epsilon",
    "figure3",
    "figure3_rows",
    "figure4",
    "figure5",
    "figure_report",
]
