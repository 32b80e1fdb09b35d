"""Exception hierarchy for polyfix.

Every error raised by the library derives from PolyfixError, so callers can
catch the whole family with one clause.  Parse-time errors carry a source
location; the CLI maps error classes onto stable exit codes.
"""

from __future__ import annotations


class PolyfixError(Exception):
    """Base class for all polyfix errors."""


class DimensionMismatch(PolyfixError):
    """A vector or matrix does not match the dimension of its system."""


class ParseError(PolyfixError):
    """Invalid input text.  Carries a 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class NegativeCoefficient(ParseError):
    """A coefficient is negative; monotone systems require coefficients >= 0."""


class UndefinedVariable(ParseError):
    """A right-hand side mentions a variable with no defining equation."""


class SingularMatrix(PolyfixError):
    """A linear solve hit a zero (or below-threshold) pivot column.

    On valid clean, feasible systems this never happens in exact mode; it
    signals an unclean/infeasible input, or precision loss in float mode.
    """


class AllVariablesUnproductive(PolyfixError):
    """Cleaning removed every variable: the system has no positive behaviour."""


class ProbabilitySumViolation(PolyfixError):
    """Rule probabilities of some (state, symbol) pair do not sum to one."""

    def __init__(self, state: str, symbol: str, total):
        self.state = state
        self.symbol = symbol
        self.total = total
        super().__init__(f"rules from ({state}, {symbol}) have total probability {total}, expected 1")


class RhsTooLong(PolyfixError):
    """A pushdown rule pushes more than two stack symbols."""


class InfeasibleSuspected(PolyfixError):
    """An iterate exceeded the divergence bound; the system is likely infeasible."""


class MissingUpperBound(PolyfixError):
    """The operation needs a verified upper bound on the least fixed point."""


class ZeroLowerBound(PolyfixError):
    """The lower-bound iterate still has a zero component; iterate further."""


class NotTerminationSystem(PolyfixError):
    """The system was not produced by compiling a pushdown automaton."""


class NotStrictSystem(PolyfixError):
    """The system was not produced from a strict pushdown automaton."""


class NotCertifiable(PolyfixError):
    """No certificate can be issued for the given trace and method."""
