"""Error and diagnostic types shared by every layer of the engine.

Every user-facing failure is a :class:`MathparError` carrying a stable
machine-readable ``code`` and, when the failure can be tied to a place in
the source text, a character :class:`Span`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Span:
    """Half-open character range ``[start, end)`` into a source string."""

    start: int
    end: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.start, self.end)


class MathparError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, message: str, span: Optional[Span] = None):
        super().__init__(message)
        self.message = message
        self.span = span


# -- lexing / parsing ------------------------------------------------------

class UnterminatedString(MathparError):
    code = "unterminated-string"


class UnknownCharacter(MathparError):
    code = "unknown-character"


class ParseError(MathparError):
    """Syntax error with the span of the offending token."""

    code = "syntax-error"


class MissingDifferential(ParseError):
    code = "missing-differential"


# -- evaluation ------------------------------------------------------------

class DivisionByZero(MathparError):
    code = "division-by-zero"


class UnboundSymbol(MathparError):
    code = "unbound-symbol"


class DomainError(MathparError):
    code = "domain-error"


class UnsupportedNode(MathparError):
    code = "unsupported-node"


class UnsupportedIntegrand(MathparError):
    code = "unsupported-integrand"


class NonlinearEquation(MathparError):
    code = "nonlinear-equation"


class DegenerateEquation(MathparError):
    code = "degenerate-equation"


class FreeVariable(MathparError):
    code = "free-variable"


class MixedUnitsInSum(MathparError):
    code = "mixed-units-in-sum"


class UnitAsUnknown(MathparError):
    code = "unit-as-unknown"


# -- service ---------------------------------------------------------------

class SessionNotFound(MathparError):
    code = "session-not-found"


class PayloadTooLarge(MathparError):
    code = "payload-too-large"


class CapacityExceeded(MathparError):
    code = "capacity-exceeded"


@dataclass(frozen=True)
class Diagnostic:
    """One reported problem: where, what, and how bad."""

    message: str
    severity: str = "error"
    span: Optional[Span] = None
    code: str = "error"

    @classmethod
    def from_error(cls, err: MathparError, severity: str = "error") -> "Diagnostic":
        return cls(message=err.message, severity=severity, span=err.span, code=err.code)

    def render(self) -> str:
        loc = f" at {self.span.start}..{self.span.end}" if self.span else ""
        return f"{self.severity}{loc}: {self.message}"
