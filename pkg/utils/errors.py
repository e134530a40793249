"""
Error hierarchy shared by every package, and the mapping to cli exit codes.
"""

from typing import Any, Dict, Optional

from pydantic import ValidationError


class BirthProcessError(Exception):
    """Base class for all errors raised by the simulation and analytics layers."""


class InvalidArgumentError(BirthProcessError, ValueError):
    """A precondition on an argument was violated."""


class InsufficientDataError(BirthProcessError, ValueError):
    """Too few events, particles or samples for the requested statistic."""


class ExplosionGuardError(BirthProcessError, RuntimeError):
    """A run exceeded its configured event cap."""

    def __init__(self, max_events: int, time_reached: float):
        super().__init__(
            f"Event cap of {max_events} exceeded at t={time_reached:.6g}; "
            "the parameterization grows faster than the guard allows"
        )
        self.max_events = max_events
        self.time_reached = time_reached


class InclusionViolationError(BirthProcessError, RuntimeError):
    """The lower process of a coupled pair produced a particle the upper one lacks."""


class NumericalConsistencyError(BirthProcessError, ArithmeticError):
    """Two computation routes disagree, or a bracketing search failed."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def exit_code_for(exc: BaseException) -> int:
    """
    Map an exception to a cli exit code.

    Usage and configuration problems exit with 2; verification, statistical and
    runtime failures exit with 1.
    """
    if isinstance(exc, (InvalidArgumentError, ValidationError, FileNotFoundError, IsADirectoryError)):
        return EXIT_USAGE
    return EXIT_FAILURE
