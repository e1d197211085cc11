"""Exception hierarchy shared by all modules.

Every error carries a machine-readable ``code``; the command line maps
:class:`DomainError` to exit status 2 and :class:`GuardError` to 3.
"""

from __future__ import annotations


class SingresError(Exception):
    code = "error"
    exit_code = 2


class DomainError(SingresError, ValueError):
    """Input violates a mathematical precondition."""

    code = "domain"


class ContextMismatch(DomainError):
    code = "context-mismatch"


class NotDivisible(DomainError):
    code = "not-divisible"


class ParseError(DomainError):
    code = "syntax"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GuardError(SingresError, RuntimeError):
    """A termination or size guard fired before the computation finished."""

    code = "guard"
    exit_code = 3


class TermLimitExceeded(GuardError):
    code = "term-limit"


class SaturationCapExceeded(GuardError):
    code = "saturation-cap"


class StepLimitExceeded(GuardError):
    code = "step-limit"


class NonRationalPoint(DomainError):
    code = "non-rational"


class PositiveDimensional(DomainError):
    code = "positive-dimensional"
