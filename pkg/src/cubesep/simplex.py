"""Exact rational simplex with Bland's rule.

Solves min c.z subject to A z = b, z >= 0 over Fractions.  Bland's
entering/leaving rule guarantees termination, and every pivot stays in
exact arithmetic, so gauge values and supporting vertices come out as
honest rationals.  Problem sizes here are tiny (tens of rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateSpecError


class InfeasibleError(DegenerateSpecError):
    pass


class UnboundedError(DegenerateSpecError):
    pass


@dataclass
class LPResult:
    value: Fraction
    solution: tuple[Fraction, ...]


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    inv = tab[row][col]
    tab[row] = [x / inv for x in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            factor = tab[r][col]
            tab[r] = [a - factor * b for a, b in zip(tab[r], tab[row])]
    basis[row] = col


def _reduced_costs(tab, basis, cost) -> list[Fraction]:
    ncols = len(tab[0]) - 1
    # y = c_B B^{-1} applied implicitly: reduced_j = c_j - sum_i c_{B(i)} tab[i][j]
    out = []
    for j in range(ncols):
        rc = cost[j]
        for i, b in enumerate(basis):
            cb = cost[b]
            if cb != 0 and tab[i][j] != 0:
                rc -= cb * tab[i][j]
        out.append(rc)
    return out


def _bland_iterate(tab, basis, cost) -> None:
    nrows = len(tab)
    while True:
        reduced = _reduced_costs(tab, basis, cost)
        entering = None
        for j, rc in enumerate(reduced):
            if rc < 0:
                entering = j
                break
        if entering is None:
            return
        leaving = None
        best_ratio: Optional[Fraction] = None
        for i in range(nrows):
            a = tab[i][entering]
            if a > 0:
                ratio = tab[i][-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leaving])):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            raise UnboundedError("linear program is unbounded")
        _pivot(tab, basis, leaving, entering)


def solve_standard_form(
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction],
    basis: Optional[list[int]] = None,
) -> LPResult:
    """min c.z, A z = b, z >= 0.  A starting basis of identity columns may
    be supplied; otherwise phase-1 artificials construct one."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    for i in range(nrows):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    if basis is None:
        # phase 1: minimize the sum of artificial variables
        tab = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(nrows)]
               + [b[i]] for i in range(nrows)]
        basis = [ncols + i for i in range(nrows)]
        cost1 = [Fraction(0)] * ncols + [Fraction(1)] * nrows
        _bland_iterate(tab, basis, cost1)
        value1 = sum(tab[i][-1] for i in range(nrows) if basis[i] >= ncols)
        if value1 != 0:
            raise InfeasibleError("linear program is infeasible")
        # drive remaining artificials out of the basis where possible
        for i in range(nrows):
            if basis[i] >= ncols:
                pivot_col = next((j for j in range(ncols) if tab[i][j] != 0), None)
                if pivot_col is not None:
                    _pivot(tab, basis, i, pivot_col)
        keep = [i for i in range(nrows) if basis[i] < ncols]
        tab = [tab[i][:ncols] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
    else:
        tab = [A[i] + [b[i]] for i in range(nrows)]
        basis = list(basis)

    _bland_iterate(tab, basis, c)
    solution = [Fraction(0)] * ncols
    for i, bj in enumerate(basis):
        solution[bj] = tab[i][-1]
    value = sum(ci * zi for ci, zi in zip(c, solution))
    return LPResult(value, tuple(solution))


def vertices_gauge(points: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Fraction:
    """Minkowski gauge of v for the symmetric hull of the given points:
    min sum(lambda) with v = sum lambda_j (+-p_j), lambda >= 0."""
    n = len(v)
    m = len(points)
    if m == 0:
        raise DegenerateSpecError("no points")
    cols = [[Fraction(p[i]) for i in range(n)] for p in points]
    cols += [[-x for x in col] for col in cols]
    A = [[cols[j][i] for j in range(2 * m)] for i in range(n)]
    c = [Fraction(1)] * (2 * m)
    try:
        res = solve_standard_form(A, list(v), c)
    except InfeasibleError:
        raise DegenerateSpecError("vector outside the span of the points") from None
    return res.value


def facet_ball_argmax(
    functionals: Sequence[Sequence[Fraction]], c: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], Fraction]:
    """argmax of c.x over {x : |f_i . x| <= 1 for all i}.

    Variables split x = u - w with u, w >= 0 and one slack per signed
    facet; the all-slack basis is feasible, so no phase 1 is needed.
    """
    n = len(c)
    F = [[Fraction(x) for x in f] for f in functionals]
    F = F + [[-x for x in f] for f in F]  # signed facets
    m = len(F)
    A = [F[i][:] + [-x for x in F[i]] + [Fraction(1) if j == i else Fraction(0)
                                         for j in range(m)] + [Fraction(1)]
         for i in range(m)]
    rows = [row[:-1] for row in A]
    b = [Fraction(1)] * m
    cost = [Fraction(-x) for x in c] + [Fraction(x) for x in c] + [Fraction(0)] * m
    basis = [2 * n + i for i in range(m)]
    try:
        res = solve_standard_form(rows, b, cost, basis=basis)
    except UnboundedError:
        raise DegenerateSpecError("facet ball is unbounded; functionals do not span") from None
    x = tuple(res.solution[j] - res.solution[n + j] for j in range(n))
    return x, -res.value
