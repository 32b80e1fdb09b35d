"""Scalar arithmetic modes and rational helpers.

Two system-wide arithmetic modes exist:

* exact mode -- scalars are ``fractions.Fraction`` (arbitrary-precision
  rationals, always reduced).  This is the default and the only mode in
  which certificates may be issued.
* float mode -- scalars are ``mpmath`` floats of a configurable binary
  precision (default 53 bits).  Faster, useful for exploration and for
  high-precision reference solves, but results carry no soundness
  guarantee.

Coefficients of systems are always stored as exact rationals; the mode
controls the scalar type of iterate vectors and of linear algebra.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .errors import DimensionMismatch

Scalar = object  # Fraction in exact mode, mpmath.mpf in float mode
Vector = tuple
Matrix = tuple

#: Iterates larger than this abort the solve with InfeasibleSuspected.
DEFAULT_DIVERGENCE_BOUND = Fraction(10) ** 12


class ExactMode:
    """Exact rational arithmetic (``fractions.Fraction``)."""

    name = "exact"
    is_exact = True

    def scalar(self, value) -> Fraction:
        return Fraction(value)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def zeros(self, n: int) -> Vector:
        return (Fraction(0),) * n

    def ones(self, n: int) -> Vector:
        return (Fraction(1),) * n

    def vector(self, values) -> Vector:
        return tuple(Fraction(v) for v in values)

    def is_finite(self, value) -> bool:
        return True

    def to_float(self, value) -> float:
        return float(value)

    def __repr__(self):
        return "ExactMode()"


class FloatMode:
    """Binary floating point of configurable precision, backed by mpmath.

    Each instance owns a private mpmath context, so two float modes of
    different precision can coexist without touching global state.
    """

    name = "float"
    is_exact = False

    def __init__(self, precision: int = 53, pivot_threshold: float = 1e-12):
        if precision < 4:
            raise ValueError(f"float precision must be >= 4 bits, got {precision}")
        self.precision = precision
        self.pivot_threshold = pivot_threshold
        self.ctx = mpmath.mp.clone()
        self.ctx.prec = precision

    def scalar(self, value):
        if isinstance(value, Fraction):
            return self.ctx.mpf(value.numerator) / value.denominator
        return self.ctx.mpf(value)

    def zero(self):
        return self.ctx.mpf(0)

    def one(self):
        return self.ctx.mpf(1)

    def zeros(self, n: int) -> Vector:
        return (self.ctx.mpf(0),) * n

    def ones(self, n: int) -> Vector:
        return (self.ctx.mpf(1),) * n

    def vector(self, values) -> Vector:
        return tuple(self.scalar(v) for v in values)

    def is_finite(self, value) -> bool:
        return self.ctx.isfinite(value)

    def to_float(self, value) -> float:
        return float(value)

    def __repr__(self):
        return f"FloatMode(precision={self.precision})"


#: Shared default exact mode.
EXACT = ExactMode()


def floor_dyadic(value: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that does not exceed ``value`` (>= 0)."""
    return Fraction((value.numerator << bits) // value.denominator, 1 << bits)


def fraction_from_decimal(text: str) -> Fraction:
    """Parse a decimal literal such as ``0.4`` into the exact rational 4/10."""
    if "." in text:
        whole, _, frac = text.partition(".")
        whole = whole or "0"
        return Fraction(int(whole) * 10 ** len(frac) + int(frac or "0"), 10 ** len(frac))
    return Fraction(int(text))


def format_fraction(q: Fraction) -> str:
    """Serialize a rational as a decimal-free ``num/den`` string."""
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Inverse of :func:`format_fraction`; also accepts plain integers."""
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den)) if den else Fraction(int(num))


def floor_log2(q: Fraction) -> int:
    """Largest integer e with 2**e <= q, for q > 0."""
    if q <= 0:
        raise ValueError("floor_log2 requires a positive argument")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    # e is within 1 of the answer; fix up exactly.
    if Fraction(2) ** e > q:
        e -= 1
    elif Fraction(2) ** (e + 1) <= q:
        e += 1
    return e

# Working precision for the squaring iteration in log2_upper.  Intermediate
# values are rounded up (never down) to this many bits, which preserves the
# upper-bound direction while keeping numbers small.
_LOG2_WORK_BITS = 192


def _ceil_dyadic(value: Fraction, bits: int) -> Fraction:
    return Fraction(-((-value.numerator << bits) // value.denominator), 1 << bits)


def log2_upper(q: Fraction, frac_bits: int = 16) -> Fraction:
    """A rational upper bound on log2(q) with about ``frac_bits`` bits of slack.

    Exact when q is a power of two.  Used for threshold formulas, where an
    over-approximation is the safe direction.
    """
    if q <= 0:
        raise ValueError("log2_upper requires a positive argument")
    e = floor_log2(q)
    r = q / Fraction(2) ** e
    if r == 1:
        return Fraction(e)
    bits = Fraction(0)
    for i in range(1, frac_bits + 1):
        r = _ceil_dyadic(r * r, _LOG2_WORK_BITS)
        if r >= 2:
            bits += Fraction(1, 2 ** i)
            r /= 2
        if r == 1:
            return e + bits
    return e + bits + Fraction(1, 2 ** frac_bits)


def ceil_fraction(q: Fraction) -> int:
    return math.ceil(q)


def bit_length_fraction(q: Fraction) -> int:
    """Max bit length of numerator and denominator in reduced form."""
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


def check_dimension(actual: int, expected: int, what: str = "vector") -> None:
    if actual != expected:
        raise DimensionMismatch(f"{what} has dimension {actual}, expected {expected}")


def vec_max_norm(v: Vector):
    """Max-norm of a vector; assumes comparable scalars of one mode."""
    m = abs(v[0])
    for x in v[1:]:
        ax = abs(x)
        if ax > m:
            m = ax
    return m


def vec_leq(a: Vector, b: Vector) -> bool:
    """Componentwise a <= b."""
    return all(x <= y for x, y in zip(a, b))


def vec_lt_strict(a: Vector, b: Vector) -> bool:
    """Componentwise a < b in every component."""
    return all(x < y for x, y in zip(a, b))
