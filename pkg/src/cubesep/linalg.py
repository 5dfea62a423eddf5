"""Small dense linear algebra over exact rationals, floats or complex.

Dimensions here never exceed a dozen, so plain Gaussian elimination is
enough.  Exact inputs (Fraction entries) use first-nonzero pivoting and
stay exact; float/complex inputs pivot on magnitude.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _is_exact(rows) -> bool:
    for row in rows:
        for x in row:
            if isinstance(x, (float, complex)):
                return False
    return True


def mat_det(rows: Sequence[Sequence]):
    n = len(rows)
    exact = _is_exact(rows)
    # ints must become Fractions up-front: int/int division would go float
    m = [[Fraction(x) for x in r] if exact else list(r) for r in rows]
    det = Fraction(1) if exact else 1.0
    for col in range(n):
        pivot = None
        if exact:
            for r in range(col, n):
                if m[r][col] != 0:
                    pivot = r
                    break
        else:
            best = 0.0
            for r in range(col, n):
                if abs(m[r][col]) > best:
                    best = abs(m[r][col])
                    pivot = r
        if pivot is None or m[pivot][col] == 0:
            return Fraction(0) if exact else 0.0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def mat_inverse(rows: Sequence[Sequence]) -> list[list]:
    n = len(rows)
    exact = _is_exact(rows)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    m = [([Fraction(x) for x in r] if exact else list(r))
         + [one if i == j else zero for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        pivot = None
        if exact:
            for r in range(col, n):
                if m[r][col] != 0:
                    pivot = r
                    break
        else:
            best = 0.0
            for r in range(col, n):
                if abs(m[r][col]) > best:
                    best = abs(m[r][col])
                    pivot = r
        if pivot is None or m[pivot][col] == 0:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


def mat_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    m = [[Fraction(x) for x in r] for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col]
        m[row] = [x / inv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def cofactor_column(rows: Sequence[Sequence], col: int) -> list:
    """Vector c with det(M) = sum_j c[j] * M[j][col] for any values in
    column col (the signed minors along that column)."""
    n = len(rows)
    out = []
    for j in range(n):
        minor = [[rows[r][c] for c in range(n) if c != col]
                 for r in range(n) if r != j]
        sign = 1 if (j + col) % 2 == 0 else -1
        if minor:
            out.append(sign * mat_det(minor))
        else:
            out.append(sign * (Fraction(1) if _is_exact(rows) else 1.0))
    return out


def dot(a: Sequence, b: Sequence):
    total = None
    for x, y in zip(a, b):
        term = x * y
        total = term if total is None else total + term
    return total if total is not None else 0
