"""Off-diagonal grid sets with the crossed-coordinate property.

Points are pairs (k, m), k != m, from {1..n}^2.  A set has the star
property when any two members either have disjoint supports or share
indices only in crossed positions (first coordinate of one, second of the
other).  Such sets have at most n members, and the maximal ones cover
every index exactly twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError, PreconditionError

GridPoint = tuple[int, int]


def _validate_point(p: GridPoint, n: int) -> None:
    k, m = p
    if not (1 <= k <= n and 1 <= m <= n):
        raise PreconditionError(f"grid point {p} outside 1..{n} square")
    if k == m:
        raise PreconditionError(f"grid point {p} lies on the diagonal")


def _pair_ok(x: GridPoint, y: GridPoint) -> bool:
    shared = set(x) & set(y)
    if not shared:
        return True
    for k in shared:
        first_x = x[0] == k
        first_y = y[0] == k
        if first_x == first_y:  # same position in both points
            return False
    return True


def grid_star_check(B: Iterable[GridPoint], n: int) -> bool:
    """True iff every pair of distinct points satisfies the star property."""
    pts = [tuple(p) for p in B]
    for p in pts:
        _validate_point(p, n)
    if len(set(pts)) != len(pts):
        raise PreconditionError("duplicate grid points")
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if not _pair_ok(x, y):
                return False
    return True


@dataclass
class GridReport:
    n: int
    max_size: int
    witness: tuple[GridPoint, ...]
    size_bound_holds: bool          # every star set has at most n points
    coverage_holds: bool            # every size-n star set covers each index twice, crossed
    star_sets_examined: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_size": self.max_size,
            "witness": [list(p) for p in self.witness],
            "size_bound_holds": self.size_bound_holds,
            "coverage_holds": self.coverage_holds,
            "star_sets_examined": self.star_sets_examined,
        }


def _coverage_ok(B: Sequence[GridPoint], n: int) -> bool:
    for k in range(1, n + 1):
        firsts = [p for p in B if p[0] == k]
        seconds = [p for p in B if p[1] == k]
        if len(firsts) != 1 or len(seconds) != 1:
            return False
        if firsts[0] == seconds[0]:  # would be a diagonal point
            return False
    return True


def grid_max_properties(n: int, budget: int = 5) -> GridReport:
    """Exhaustively enumerate every star set of the n-grid.

    Verifies the size bound (no star set has n+1 points) and, for every
    star set of exactly n points, the crossed double-coverage of each
    index.  The witness reported is the first maximum-size set in
    lexicographic depth-first order.
    """
    if n < 1:
        raise PreconditionError("grid size must be positive")
    if n > budget:
        raise BudgetExceededError(f"exhaustive grid check capped at n = {budget}")
    cells = [(k, m) for k in range(1, n + 1) for m in range(1, n + 1) if k != m]
    best: list[GridPoint] = []
    examined = 0
    oversized = False
    coverage_ok = True

    def extend(start: int, current: list[GridPoint]) -> None:
        nonlocal examined, oversized, coverage_ok, best
        examined += 1
        if len(current) > n:
            oversized = True
        if len(current) > len(best):
            best = list(current)
        if len(current) == n and not _coverage_ok(current, n):
            coverage_ok = False
        for i in range(start, len(cells)):
            c = cells[i]
            if all(_pair_ok(c, p) for p in current):
                current.append(c)
                extend(i + 1, current)
                current.pop()

    extend(0, [])
    return GridReport(
        n=n,
        max_size=len(best),
        witness=tuple(best),
        size_bound_holds=not oversized,
        coverage_holds=coverage_ok,
        star_sets_examined=examined,
    )
