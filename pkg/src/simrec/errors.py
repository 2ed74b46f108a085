"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SimrecError(Exception):
    """Base class for all errors raised by simrec."""


class ParseError(SimrecError):
    """Malformed system text.

    ``line`` is 1-based; it is ``None`` when the problem is not tied to a
    single line (for example a missing ``init:`` line).
    """

    kind = "syntax"

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class UndeclaredVariableError(ParseError):
    kind = "undeclared-variable"


class LagError(ParseError):
    kind = "bad-index"


class DuplicateEquationError(ParseError):
    kind = "duplicate-equation"


class MissingInitError(ParseError):
    kind = "missing-init"


class MalformedRationalError(ParseError):
    kind = "malformed-rational"


class StructuralConditionError(SimrecError):
    """A structural precondition (equal sums, weights, ...) does not hold."""


class UnsupportedCaseError(StructuralConditionError):
    """The input lies in a degenerate case for which no formula is available."""


class UnsupportedOrderError(StructuralConditionError):
    """The operation is only defined for a restricted set of system orders."""


class TrajectoryTooShortError(SimrecError):
    """A trajectory does not have enough rows for the requested check."""


class StepLimitError(SimrecError):
    """Iteration was asked to run past the configured step limit."""
