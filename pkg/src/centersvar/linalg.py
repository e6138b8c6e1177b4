"""Exact linear algebra over the rationals.

Matrices are lists of lists whose entries are ``int`` or ``fractions.Fraction``;
all routines are exact. Sizes in this package never exceed a few dozen rows,
so plain Gaussian elimination with rational pivots is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = Sequence
Matrix = Sequence[Row]


def det(rows: Matrix) -> Fraction:
    """Determinant of a square matrix, exact."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return Fraction(rows[0][0])
    if n == 2:
        return Fraction(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0])
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return Fraction(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
    # Laplace expansion along the first row, reusing the 3x3 fast path for n=4.
    total = Fraction(0)
    for j, entry in enumerate(rows[0]):
        if entry == 0:
            continue
        minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
        term = entry * det(minor)
        total += term if j % 2 == 0 else -term
    return total


def mat_mul(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    if len(a[0]) != inner:
        raise ValueError("shape mismatch in mat_mul")
    return [
        [sum((Fraction(a[i][k]) * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_vec(a: Matrix, v: Row) -> list[Fraction]:
    if len(a[0]) != len(v):
        raise ValueError("shape mismatch in mat_vec")
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Matrix) -> list[list[Fraction]]:
    return [[Fraction(a[i][j]) for i in range(len(a))] for j in range(len(a[0]))]


def rref(a: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def kernel_basis(a: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel {v : A v = 0}, one vector per free column."""
    m, pivots = rref(a)
    n_cols = len(a[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Row) -> list[Fraction] | None:
    """Unique solution of A x = b for square A, or None if A is singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [m[i][n] for i in range(n)]


def inverse(a: Matrix) -> list[list[Fraction]] | None:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m]


