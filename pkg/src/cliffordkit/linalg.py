"""Exact Gauss-Jordan elimination over rationals and Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction

from .errors import InconsistentSystem

__all__ = ["rref", "rank", "nullspace", "solve", "det", "inverse"]


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``; input untouched."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col] if not isinstance(m[r][col], int) else Fraction(1, m[r][col])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x : A x = 0}`` as a list of coordinate lists."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(m, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(A, b) -> list:
    """One solution of ``A x = b``; free variables are set to zero."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    m, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        raise InconsistentSystem("linear system has no solution")
    x = [Fraction(0)] * ncols
    for row, p in zip(m, pivots):
        x[p] = row[ncols]
    return x


def det(rows):
    """Determinant by elimination; exact for rational and Gaussian entries."""
    m = [list(r) for r in rows]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        p = m[col][col]
        result = result * p
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / p if not isinstance(p, int) else Fraction(m[i][col]) / p
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return result


def inverse(rows):
    """Inverse of a square matrix; raises InconsistentSystem when singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise InconsistentSystem("matrix is singular")
    return [row[n:] for row in m]
