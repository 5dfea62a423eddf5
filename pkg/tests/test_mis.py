"""The exact independent-set engine against brute-force oracles."""

from __future__ import annotations

import itertools
import random

import pytest

from cubesep.errors import BudgetExceededError
from cubesep.mis import (
    exists_independent_set,
    lex_least_independent_set_of_size,
    mask_to_indices,
    max_independent_set,
)


def _random_graph(rng, n, p):
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _brute_max_independent(adj):
    n = len(adj)
    best = 0
    for mask in range(1 << n):
        ok = True
        m = mask
        while m:
            lsb = m & -m
            v = lsb.bit_length() - 1
            if adj[v] & mask:
                ok = False
                break
            m ^= lsb
        if ok:
            best = max(best, mask.bit_count())
    return best


def _brute_lex_least_of_size(adj, k):
    n = len(adj)
    for combo in itertools.combinations(range(n), k):
        if all(not (adj[a] >> b) & 1 for a, b in itertools.combinations(combo, 2)):
            return list(combo)
    return None


def test_max_independent_set_matches_brute_force():
    rng = random.Random(71)
    for _ in range(60):
        n = rng.randint(1, 13)
        adj = _random_graph(rng, n, rng.choice((0.15, 0.35, 0.6)))
        size, mask = max_independent_set(adj)
        assert size == _brute_max_independent(adj)
        chosen = mask_to_indices(mask)
        assert len(chosen) == size
        for a, b in itertools.combinations(chosen, 2):
            assert not (adj[a] >> b) & 1


def test_lex_least_witness_matches_brute_force():
    rng = random.Random(72)
    for _ in range(60):
        n = rng.randint(2, 12)
        adj = _random_graph(rng, n, 0.4)
        size, _ = max_independent_set(adj)
        got = mask_to_indices(lex_least_independent_set_of_size(adj, size))
        assert got == _brute_lex_least_of_size(adj, size)


def test_decision_search_agrees_with_max():
    rng = random.Random(73)
    for _ in range(40):
        n = rng.randint(2, 12)
        adj = _random_graph(rng, n, 0.45)
        size, _ = max_independent_set(adj)
        assert exists_independent_set(adj, size) is not None
        assert exists_independent_set(adj, size + 1) is None


def test_seeded_decision_respects_independence():
    rng = random.Random(74)
    for _ in range(30):
        n = rng.randint(4, 12)
        adj = _random_graph(rng, n, 0.3)
        size, mask = max_independent_set(adj)
        seed_list = mask_to_indices(mask)[: max(1, size - 1)]
        seed = 0
        for v in seed_list:
            seed |= 1 << v
        found = exists_independent_set(adj, size, seed_mask=seed)
        assert found is not None
        chosen = mask_to_indices(found)
        assert len(chosen) == size
        for a, b in itertools.combinations(chosen, 2):
            assert not (adj[a] >> b) & 1


def test_node_budget_raises():
    rng = random.Random(75)
    adj = _random_graph(rng, 30, 0.2)
    with pytest.raises(BudgetExceededError):
        max_independent_set(adj, node_budget=3)


def test_empty_and_complete_graphs():
    assert max_independent_set([]) == (0, 0)
    n = 6
    complete = [((1 << n) - 1) & ~(1 << i) for i in range(n)]
    size, _ = max_independent_set(complete)
    assert size == 1
    empty = [0] * n
    size, mask = max_independent_set(empty)
    assert size == n and mask == (1 << n) - 1
