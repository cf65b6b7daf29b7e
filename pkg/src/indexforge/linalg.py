"""Exact linear algebra by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from fractions import Fraction
from math import lcm


class SingularMatrixError(ValueError):
    """Raised when an exact system has no unique solution."""


def _integer_rows(rows):
    """Scale each row to integers; returns the integer rows and the scale factors."""
    out, scales = [], []
    for row in rows:
        row = [Fraction(x) for x in row]
        s = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * s) for x in row])
        scales.append(s)
    return out, scales


def _bareiss(a: list[list[int]], ncols: int):
    """In-place Bareiss elimination on the first ``ncols`` columns.

    Returns ``(sign, pivot)``: the row-swap parity and the last pivot, or
    ``(0, col)`` when column ``col`` has no pivot.
    """
    n = len(a)
    sign, prev = 1, 1
    for k in range(ncols):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return 0, k
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, len(a[i])):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign, prev


def determinant(matrix) -> Fraction:
    """Exact determinant of a square matrix of rationals."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    rows, scales = _integer_rows(matrix)
    sign, last = _bareiss(rows, n)
    if sign == 0:
        return Fraction(0)
    den = 1
    for s in scales:
        den *= s
    return Fraction(sign * last, den)


def solve(matrix, rhs) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly; raises :class:`SingularMatrixError`."""
    n = len(matrix)
    if any(len(r) != n for r in matrix) or len(rhs) != n:
        raise ValueError("solve needs a square matrix and a matching right-hand side")
    rows, _ = _integer_rows([list(r) + [b] for r, b in zip(matrix, rhs)])
    sign, col = _bareiss(rows, n)
    if sign == 0:
        raise SingularMatrixError(f"matrix is singular (no pivot in column {col})")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(rows[i][n]) - sum(rows[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / rows[i][i]
    return x
