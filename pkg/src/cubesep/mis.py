"""Exact maximum-independent-set search on bitmask adjacency lists.

Vertices are 0..m-1; ``adj[v]`` is the neighbour bitmask of v (never
including v itself).  Branch and bound with a greedy clique-cover upper
bound; candidate sets are machine integers, so everything stays exact and
allocation-light.  All entry points are deterministic for a fixed
adjacency order.
"""

from __future__ import annotations

import sys
from typing import Optional

from .errors import BudgetExceededError

sys.setrecursionlimit(100_000)


def _iter_bits(mask: int):
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def _clique_cover_bound(P: int, adj: list[int]) -> int:
    """Size of a greedy partition of P into cliques; an upper bound on the
    largest independent subset of P."""
    cliques_common: list[int] = []  # vertices adjacent to every clique member
    count = 0
    for v in _iter_bits(P):
        placed = False
        bit = 1 << v
        for i, common in enumerate(cliques_common):
            if common & bit:
                cliques_common[i] = common & adj[v]
                placed = True
                break
        if not placed:
            cliques_common.append(adj[v])
            count += 1
    return count


def _pick_branch_vertex(P: int, adj: list[int]) -> int:
    best_v = -1
    best_deg = -1
    for v in _iter_bits(P):
        deg = (adj[v] & P).bit_count()
        if deg > best_deg:
            best_deg = deg
            best_v = v
    return best_v


class _Search:
    def __init__(self, adj: list[int], node_budget: int):
        self.adj = adj
        self.node_budget = node_budget
        self.nodes = 0
        self.best_size = 0
        self.best_mask = 0
        self.target: Optional[int] = None
        self.found: Optional[int] = None

    def _expand(self, P: int, chosen: int, size: int) -> None:
        if self.found is not None:
            return
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceededError(
                f"independent-set search exceeded {self.node_budget} nodes"
            )
        if size > self.best_size:
            self.best_size = size
            self.best_mask = chosen
            if self.target is not None and size >= self.target:
                self.found = chosen
                return
        if P == 0:
            return
        limit = self.target if self.target is not None else self.best_size + 1
        if size + _clique_cover_bound(P, self.adj) < limit:
            return
        v = _pick_branch_vertex(P, self.adj)
        bit = 1 << v
        self._expand(P & ~self.adj[v] & ~bit, chosen | bit, size + 1)
        if self.found is not None:
            return
        # exclude v
        if size + _clique_cover_bound(P & ~bit, self.adj) >= limit:
            self._expand(P & ~bit, chosen, size)


def max_independent_set(adj: list[int], node_budget: int = 5_000_000) -> tuple[int, int]:
    """Exact maximum independent set: (size, one witness mask)."""
    m = len(adj)
    if m == 0:
        return 0, 0
    search = _Search(adj, node_budget)
    search._expand((1 << m) - 1, 0, 0)
    return search.best_size, search.best_mask


def exists_independent_set(
    adj: list[int],
    target: int,
    node_budget: int = 5_000_000,
    seed_mask: int = 0,
    restrict: Optional[int] = None,
) -> Optional[int]:
    """Mask of an independent set of exactly ``target`` vertices, or None.

    ``seed_mask`` (an independent set) primes the search: its greedy
    completions are tried first, which is cheap when the target is only
    slightly larger than the seed.  ``restrict`` limits the vertex pool.
    """
    m = len(adj)
    full = (1 << m) - 1 if restrict is None else restrict
    if target <= 0:
        return 0
    if target > full.bit_count():
        return None
    if seed_mask and seed_mask & full == seed_mask:
        chosen = seed_mask
        pool = full
        ok = True
        for v in _iter_bits(seed_mask):
            if adj[v] & seed_mask:
                ok = False
                break
            pool &= ~adj[v] & ~(1 << v)
        if ok:
            for v in _iter_bits(pool):
                if chosen.bit_count() >= target:
                    break
                chosen |= 1 << v
                pool &= ~adj[v] & ~(1 << v)
            if chosen.bit_count() >= target:
                return _trim(chosen, target)
    search = _Search(adj, node_budget)
    search.target = target
    search._expand(full, 0, 0)
    return search.found


def _trim(mask: int, size: int) -> int:
    out = 0
    for v in _iter_bits(mask):
        if size == 0:
            break
        out |= 1 << v
        size -= 1
    return out


def lex_least_independent_set_of_size(
    adj: list[int], size: int, node_budget: int = 5_000_000
) -> Optional[int]:
    """Lexicographically least independent set of the given size, comparing
    sets as ascending vertex-index sequences."""
    m = len(adj)
    chosen = 0
    pool = (1 << m) - 1
    floor = 0
    for remaining in range(size, 0, -1):
        found_v = None
        for v in _iter_bits(pool & ~((1 << floor) - 1)):
            rest = pool & ~adj[v] & ~((2 << v) - 1)
            if remaining == 1 or exists_independent_set(
                adj, remaining - 1, node_budget, restrict=rest
            ) is not None:
                found_v = v
                break
        if found_v is None:
            return None
        chosen |= 1 << found_v
        pool &= ~adj[found_v] & ~((2 << found_v) - 1)
        floor = found_v + 1
    return chosen


def mask_to_indices(mask: int) -> list[int]:
    return list(_iter_bits(mask))
