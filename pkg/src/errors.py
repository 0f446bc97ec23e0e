"""Error types and process exit codes for the workbench."""

from enum import IntEnum
from typing import Any, Optional


class ExitCode(IntEnum):
    OK = 0
    USAGE_ERROR = 1
    CHECK_FAILED = 2


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class PreconditionError(WorkbenchError, ValueError):
    """An operation was called outside its documented domain."""


class SizeBoundError(PreconditionError):
    """Graph too large for exhaustive search."""

    def __init__(self, n: int, bound: int):
        super().__init__(f"graph has {n} vertices, exhaustive search is limited to {bound}")
        self.n = n
        self.bound = bound


class DimensionMismatchError(WorkbenchError, ValueError):
    """Vector, operator or family dimensions disagree."""


class ConvergenceError(WorkbenchError):
    """An iterative method stopped before meeting its tolerance.

    The best iterate found so far is kept on the exception so callers can
    still report it.
    """

    def __init__(self, message: str, best: Optional[Any] = None, iterations: int = 0):
        super().__init__(message)
        self.best = best
        self.iterations = iterations


class InputFormatError(WorkbenchError):
    """A JSON document does not match the expected layout."""
