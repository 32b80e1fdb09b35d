"""Monotone polynomial systems: monomials, polynomials, and systems X = f(X).

All coefficients are exact non-negative rationals, which makes every system
monotone on the non-negative orthant by construction.  Values are immutable
and canonical: like terms are merged eagerly and monomials are stored in a
fixed order, so equality is structural and printing is deterministic.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .arithmetic import check_dimension
from .errors import NegativeCoefficient

# Variable names must survive a print/parse round trip: plain identifiers,
# or bracketed state.symbol.state triples as produced by the pushdown
# compiler, e.g. "[p.X.q]".
_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_NAME_RE = re.compile(rf"^(?:{_IDENT}|\[{_IDENT}\.{_IDENT}\.{_IDENT}\])$")

# Exponent map of a monomial: ((var_index, power), ...) sorted by index.
Powers = tuple


@dataclass(frozen=True)
class Monomial:
    """coefficient * product of variables raised to positive integer powers."""

    coeff: Fraction
    powers: Powers  # ((var_index, power), ...) sorted, powers >= 1

    @property
    def degree(self) -> int:
        return sum(p for _, p in self.powers)

    def eval(self, x):
        t = self.coeff
        for i, p in self.powers:
            t = t * x[i] ** p
        return t


def _normalize_powers(powers) -> Powers:
    merged: dict[int, int] = {}
    for i, p in powers:
        if p < 0:
            raise ValueError(f"negative exponent {p} for variable index {i}")
        if p > 0:
            merged[i] = merged.get(i, 0) + p
    return tuple(sorted(merged.items()))


@dataclass(frozen=True)
class Polynomial:
    """A polynomial with non-negative rational coefficients, in canonical form.

    The zero polynomial is represented by an empty monomial tuple.
    """

    monomials: tuple[Monomial, ...]

    @staticmethod
    def from_terms(terms) -> "Polynomial":
        """Build from (coeff, powers) pairs; merges like terms, drops zeros.

        Raises NegativeCoefficient if any input coefficient is negative.
        """
        acc: dict[Powers, Fraction] = {}
        for coeff, powers in terms:
            coeff = Fraction(coeff)
            if coeff < 0:
                raise NegativeCoefficient(f"coefficient {coeff} is negative")
            if coeff == 0:
                continue
            key = _normalize_powers(powers)
            acc[key] = acc.get(key, Fraction(0)) + coeff
        monos = [Monomial(c, k) for k, c in acc.items() if c != 0]
        monos.sort(key=lambda m: (-m.degree, m.powers))
        return Polynomial(tuple(monos))

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def constant(value) -> "Polynomial":
        return Polynomial.from_terms([(value, ())])

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.monomials), default=0)

    @property
    def constant_term(self) -> Fraction:
        for m in self.monomials:
            if not m.powers:
                return m.coeff
        return Fraction(0)

    def variables_used(self) -> frozenset[int]:
        return frozenset(i for m in self.monomials for i, _ in m.powers)

    def eval(self, x, zero):
        s = zero
        for m in self.monomials:
            s = s + m.eval(x)
        return s

    def partial(self, k: int) -> "Polynomial":
        """Partial derivative with respect to variable k."""
        terms = []
        for m in self.monomials:
            for i, p in m.powers:
                if i == k:
                    reduced = tuple((j, q - 1 if j == k else q) for j, q in m.powers)
                    terms.append((m.coeff * p, reduced))
        return Polynomial.from_terms(terms)

    def substitute(self, values: dict, remap: dict[int, int]) -> "Polynomial":
        """Replace variables by exact scalar values and re-index the rest.

        ``values`` maps old indices to scalars; every other index used by the
        polynomial must appear in ``remap``.  Monomials whose substituted
        factors include a zero vanish.
        """
        terms = []
        for m in self.monomials:
            coeff = m.coeff
            kept = []
            for i, p in m.powers:
                if i in values:
                    coeff = coeff * values[i] ** p
                    if coeff == 0:
                        break
                else:
                    kept.append((remap[i], p))
            else:
                terms.append((coeff, tuple(kept)))
        return Polynomial.from_terms(terms)

    def scaled(self, factor: Fraction) -> "Polynomial":
        return Polynomial.from_terms((m.coeff * factor, m.powers) for m in self.monomials)


@dataclass(frozen=True)
class Msp:
    """A monotone system of polynomial equations X = f(X).

    ``variables`` fixes both the dimension and the display order; equation i
    defines variable i.  Provenance flags record whether the system was
    compiled from a (strict) pushdown model; they are metadata and do not
    take part in equality.

    Instances are immutable; derived analyses are cached on first use.
    """

    variables: tuple[str, ...]
    equations: tuple[Polynomial, ...]
    is_termination: bool = field(default=False, compare=False)
    is_strict_termination: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.variables) < 1:
            raise ValueError("a system needs at least one variable")
        if len(self.equations) != len(self.variables):
            raise ValueError(
                f"{len(self.equations)} equations for {len(self.variables)} variables"
            )
        seen = set()
        for name in self.variables:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)
        n = len(self.variables)
        for eq in self.equations:
            for m in eq.monomials:
                for i, _ in m.powers:
                    if not 0 <= i < n:
                        raise ValueError(f"monomial references variable index {i}, n={n}")

    @property
    def n(self) -> int:
        return len(self.variables)

    @cached_property
    def var_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.variables)}

    def eval(self, x):
        """f(x), componentwise, in the scalar type of x."""
        check_dimension(len(x), self.n)
        zero = x[0] * 0
        return tuple(eq.eval(x, zero) for eq in self.equations)

    @cached_property
    def partials(self) -> tuple[dict[int, Polynomial], ...]:
        """Row i maps k -> the nonzero polynomial d f_i / d X_k."""
        rows = []
        for eq in self.equations:
            row = {}
            for k in eq.variables_used():
                d = eq.partial(k)
                if not d.is_zero:
                    row[k] = d
            rows.append(row)
        return tuple(rows)

    def jacobian(self, x):
        """The n x n matrix of partial derivatives evaluated at x."""
        check_dimension(len(x), self.n)
        zero = x[0] * 0
        return tuple(
            tuple(row[k].eval(x, zero) if k in row else zero for k in range(self.n))
            for row in self.partials
        )

    @cached_property
    def constant_terms(self) -> tuple[Fraction, ...]:
        return tuple(eq.constant_term for eq in self.equations)

    @cached_property
    def productive_variables(self) -> frozenset[int]:
        """Variables whose Kleene iterates become positive within n steps.

        Computed by positivity propagation: a variable is productive as soon
        as one of its monomials uses only productive variables.  Because
        coefficients are positive this matches the support of the n-th
        Kleene iterate exactly, without any rational arithmetic.
        """
        productive: set[int] = set()
        changed = True
        while changed:
            changed = False
            for i, eq in enumerate(self.equations):
                if i in productive:
                    continue
                for m in eq.monomials:
                    if all(j in productive for j, _ in m.powers):
                        productive.add(i)
                        changed = True
                        break
        return frozenset(productive)

    @cached_property
    def is_clean(self) -> bool:
        return len(self.productive_variables) == self.n

    @cached_property
    def is_quadratic(self) -> bool:
        return all(eq.degree <= 2 for eq in self.equations)

    @cached_property
    def is_strongly_connected(self) -> bool:
        from .graphs import scc_decompose

        return len(scc_decompose(self).sccs) == 1

    @cached_property
    def maps_unit_box_into_itself(self) -> bool:
        """True iff f(1) <= 1 componentwise, i.e. 1 is a verified upper bound.

        Since all coefficients are non-negative this is simply the row sums
        of the coefficients; it witnesses feasibility with mu <= 1.
        """
        one = Fraction(1)
        return all(sum((m.coeff for m in eq.monomials), Fraction(0)) <= one for eq in self.equations)

    def to_text(self) -> str:
        """Canonical text form; parses back to an equal system."""
        return format_msp(self)

    def sha256(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()

    def with_flags(self, is_termination: bool, is_strict_termination: bool) -> "Msp":
        return Msp(self.variables, self.equations, is_termination, is_strict_termination)


def _format_coeff(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_monomial(m: Monomial, variables: tuple[str, ...]) -> str:
    parts = [_format_coeff(m.coeff)]
    for i, p in m.powers:
        parts.append(variables[i] if p == 1 else f"{variables[i]}^{p}")
    return "*".join(parts)


def format_msp(f: Msp) -> str:
    """Render a system in the equation grammar, one equation per line."""
    lines = []
    for name, eq in zip(f.variables, f.equations):
        if eq.is_zero:
            rhs = "0"
        else:
            rhs = " + ".join(_format_monomial(m, f.variables) for m in eq.monomials)
        lines.append(f"{name} = {rhs};")
    return "\n".join(lines) + "\n"
