"""Dense linear solves for both arithmetic modes.

Exact mode uses fraction-free (Bareiss) Gaussian elimination: each row of
the augmented system is scaled to integers, elimination stays in integers
with exact divisions, and only the back substitution returns to rationals.
Float mode uses LU with partial pivoting and a configurable pivot
threshold.  Systems are small and dense; no attempt is made at sparsity.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .arithmetic import EXACT, ExactMode, check_dimension
from .errors import SingularMatrix


def identity(n: int, mode=EXACT):
    one, zero = mode.one(), mode.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_vec(A, x):
    n = len(x)
    out = []
    for row in A:
        check_dimension(len(row), n, "matrix row")
        s = x[0] * 0
        for a, v in zip(row, x):
            s = s + a * v
        out.append(s)
    return tuple(out)


def solve_linear(A, b, mode=EXACT):
    """Solve A y = b; raises SingularMatrix on a zero/below-threshold pivot."""
    n = len(b)
    check_dimension(len(A), n, "matrix")
    for row in A:
        check_dimension(len(row), n, "matrix row")
    if isinstance(mode, ExactMode):
        return _solve_bareiss(A, b, n)
    return _solve_lu(A, b, n, mode)


def _solve_bareiss(A, b, n: int):
    # Scale each augmented row to integers; Bareiss keeps all intermediate
    # entries integral, so no gcd normalization happens during elimination.
    M = []
    for i in range(n):
        row = [Fraction(v) for v in A[i]] + [Fraction(b[i])]
        scale = 1
        for v in row:
            scale = lcm(scale, v.denominator)
        M.append([int(v * scale) for v in row])
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"zero pivot column {col}")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
        pivot = M[col][col]
        for r in range(col + 1, n):
            factor = M[r][col]
            for c in range(col + 1, n + 1):
                M[r][c] = (M[r][c] * pivot - factor * M[col][c]) // prev
            M[r][col] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = Fraction(M[r][n])
        for c in range(r + 1, n):
            s -= M[r][c] * x[c]
        x[r] = s / M[r][r]
    return tuple(x)


def _solve_lu(A, b, n: int, mode):
    threshold = mode.scalar(mode.pivot_threshold)
    M = [[mode.scalar(v) for v in A[i]] + [mode.scalar(b[i])] for i in range(n)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if abs(M[piv][col]) <= threshold:
            raise SingularMatrix(f"pivot below threshold in column {col}")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
        pivot = M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                factor = M[r][col] / pivot
                for c in range(col, n + 1):
                    M[r][c] = M[r][c] - factor * M[col][c]
    x = [mode.zero()] * n
    for r in range(n - 1, -1, -1):
        s = M[r][n]
        for c in range(r + 1, n):
            s = s - M[r][c] * x[c]
        x[r] = s / M[r][r]
    return tuple(x)
