"""Exception and warning types shared across the package."""

from __future__ import annotations


class GiantLabError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(GiantLabError, ValueError):
    """An argument violates a documented precondition."""


class InfeasibleError(ParameterError):
    """The requested object provably does not exist (e.g. Moore bound)."""


class GenerationError(GiantLabError, RuntimeError):
    """A randomized builder exhausted its retry budget."""


class BudgetError(GiantLabError, RuntimeError):
    """A bounded search would exceed its configured work budget."""


class FormatError(GiantLabError, ValueError):
    """A file does not conform to a documented format.

    ``line`` carries the 1-based offending line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(GiantLabError, ValueError):
    """Tabular input is missing or misusing a documented column."""


class SubcriticalWarning(UserWarning):
    """A forecast was requested in the subcritical regime and degenerates to 0."""


class SeriesRangeWarning(UserWarning):
    """A truncated series was evaluated outside its reliable range."""
