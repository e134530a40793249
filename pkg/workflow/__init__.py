"""
Experiment drivers behind the cli: the closed-form verification suite and the
figure reproductions with their frozen defaults.
"""

from workflow.figure_defaults import FIGURE_DEFAULTS, FigureDefaults, FigureId
from workflow.figures import FigureBundle, reproduce_figure, resolve_figure
from workflow.verification import VerificationItem, VerificationReport, run_verification

__all__ = [
    "FIGURE_DEFAULTS",
    "FigureBundle",
    "FigureDefaults",
    "FigureId",
    "VerificationItem",
    "VerificationReport",
    "reproduce_figure",
    "resolve_figure",
    "run_verification",
]
