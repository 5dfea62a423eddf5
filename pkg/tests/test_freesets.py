"""Free-subset finders, the exact oracle and the arrow certification."""

from __future__ import annotations

import random

import pytest

from cubesep.config import Config
from cubesep.errors import PreconditionError
from cubesep.freesets import (
    DIFFERENCE,
    SUM,
    arrow_holds,
    chain_difference_free,
    conflict_graph,
    extend_difference_free,
    find_difference_free,
    find_sum_free,
    is_free,
    kottman_value,
    max_free_subset,
    self_sums_clear,
    sumfree_value,
    witness_difference,
    witness_sum,
)
from cubesep.ternary import (
    SymmetricCubeSet,
    TernaryVector,
    enumerate_admissible_sets,
    full_cube_set,
    permute_set,
    project_set,
    random_admissible_set,
)

from _oracles import brute_force_exists_free, brute_force_max_free

V = TernaryVector.from_coords
CFG = Config()


def cube_set(dim, coords_list):
    return SymmetricCubeSet.from_vectors(dim, [V(c) for c in coords_list])


def as_coords_set(vectors):
    return {v.coords for v in vectors}


# ---------------------------------------------------------------------------
# freeness predicate

def test_is_free_examples():
    A1 = cube_set(1, [(1,), (-1,)])
    assert is_free([V((1,)), V((-1,))], A1, DIFFERENCE)

    A2 = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)])
    assert not is_free([V((1, 0)), V((0, 1))], A2, DIFFERENCE)

    A3 = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)])
    assert is_free([V((1, 0)), V((0, 1))], A3, SUM)


def test_is_free_requires_subset():
    A = cube_set(1, [(1,), (-1,)])
    with pytest.raises(PreconditionError):
        is_free([V((0,))], A, DIFFERENCE)


def test_self_sums_clear_only_differs_on_zero():
    A = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)])
    assert self_sums_clear([V((1, 0)), V((0, 1))], A)
    assert not self_sums_clear([V((0, 0))], A)


# ---------------------------------------------------------------------------
# exact oracle

def test_max_free_subset_examples():
    w5 = witness_difference(5)
    assert len(w5) == 12
    size, witness = max_free_subset(w5, DIFFERENCE, CFG)
    assert size == 4
    assert is_free(witness, w5, DIFFERENCE)

    A = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)])
    size, witness = max_free_subset(A, SUM, CFG)
    assert size == 2
    assert as_coords_set(witness) == {(1, 0), (0, 1)}  # lex-least witness

    B = cube_set(1, [(1,), (-1,)])
    size, witness = max_free_subset(B, DIFFERENCE, CFG)
    assert size == 2
    assert as_coords_set(witness) == {(1,), (-1,)}


def test_max_free_subset_against_powerset_oracle():
    rng = random.Random(21)
    for _ in range(30):
        A = random_admissible_set(2, rng)
        members = frozenset(v.coords for v in A.vectors())
        for mode in (DIFFERENCE, SUM):
            size, witness = max_free_subset(A, mode, CFG)
            assert size == brute_force_max_free(members, mode)
            assert is_free(witness, A, mode)
    for _ in range(10):
        A = random_admissible_set(3, rng)
        if len(A) > 14:
            continue
        members = frozenset(v.coords for v in A.vectors())
        size, _ = max_free_subset(A, DIFFERENCE, CFG)
        assert size == brute_force_max_free(members, DIFFERENCE)


def test_conflict_graph_has_no_self_loops_and_is_symmetric():
    A = witness_difference(4)
    g = conflict_graph(A, DIFFERENCE)
    for i, mask in enumerate(g.adjacency):
        assert not (mask >> i) & 1
        for j in range(len(g.adjacency)):
            assert ((mask >> j) & 1) == ((g.adjacency[j] >> i) & 1)


# ---------------------------------------------------------------------------
# difference finder

def test_find_difference_free_dim1():
    cert = find_difference_free(cube_set(1, [(1,), (-1,)]), CFG)
    assert cert.claimed_size == 2
    assert as_coords_set(cert.witness) == {(1,), (-1,)}
    assert cert.checked


def test_find_difference_free_full_c2_without_zero():
    A = full_cube_set(2, include_zero=False)
    cert = find_difference_free(A, CFG)
    assert cert.claimed_size == 3
    assert as_coords_set(cert.witness) == {(1, 1), (-1, 1), (1, -1)}


def test_find_difference_free_basis_c3():
    A = cube_set(3, [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    cert = find_difference_free(A, CFG)
    assert cert.claimed_size == 4
    assert cert.verify()
    # deterministic chain output: the completing element -e_2 sorts before e_3
    assert as_coords_set(cert.witness) == {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)}


def test_find_difference_free_requires_admissible():
    with pytest.raises(PreconditionError):
        find_difference_free(cube_set(2, [(1, 0), (0, 1)]), CFG)


def test_exhaustive_dim_le_2_witness_sizes():
    for dim in (1, 2):
        for A in enumerate_admissible_sets(dim):
            cert = find_difference_free(A, CFG)
            assert cert.claimed_size == dim + 1
            assert cert.verify()


# ---------------------------------------------------------------------------
# extension step and chains

def test_extend_difference_free_full_c2():
    A = full_cube_set(2, include_zero=True)
    B = [V((1,)), V((-1,))]
    cert = extend_difference_free(A, B, CFG)
    assert as_coords_set(cert.witness) == {(1, 1), (-1, 1), (1, -1)}
    assert cert.checked


def test_extend_difference_free_basis_c2():
    A = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])
    cert = extend_difference_free(A, [V((1,)), V((-1,))], CFG)
    assert as_coords_set(cert.witness) == {(1, 0), (-1, 0), (0, 1)}


def test_extend_rejects_base_outside_projection():
    A = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])
    with pytest.raises(PreconditionError):
        extend_difference_free(A, [V((1,)), V((0,))], CFG)


def test_chain_full_c2_and_c3():
    certs = chain_difference_free(full_cube_set(2, include_zero=True), CFG)
    assert [c.claimed_size for c in certs] == [2, 3]
    assert as_coords_set(certs[0].witness) == {(1,), (-1,)}

    certs = chain_difference_free(full_cube_set(3, include_zero=True), CFG, debug=True)
    assert [c.claimed_size for c in certs] == [2, 3, 4]
    for c in certs:
        assert c.verify()


def test_chain_coherence_on_random_sets():
    rng = random.Random(5)
    for _ in range(25):
        N = rng.randint(2, 6)
        A = random_admissible_set(N, rng)
        certs = chain_difference_free(A, CFG, debug=True)
        assert len(certs) == N
        for n, cert in enumerate(certs, start=1):
            assert cert.claimed_size == n + 1
            assert cert.verify()
        # each stage's witness projects from the next stage
        for n in range(N - 1):
            lower = {v.key for v in certs[n].witness}
            upper_proj = {(p & ((1 << (n + 1)) - 1), q & ((1 << (n + 1)) - 1))
                          for (p, q) in (v.key for v in certs[n + 1].witness)}
            assert lower <= upper_proj


def test_extension_mask_fallback_matches_direct_scan(monkeypatch):
    # the bitmask product search must agree with the direct scan when both
    # see the same assignment and candidate order
    import cubesep.freesets as fs
    rng = random.Random(41)
    for _ in range(15):
        N = rng.randint(2, 5)
        A = random_admissible_set(N, rng)
        prA = project_set(A, N - 1)
        base = find_difference_free(prA, CFG).witness
        B_keys = sorted(v.key for v in base)
        direct = fs._extend_difference_keys(B_keys, A, CFG)
        with monkeypatch.context() as mp:
            mp.setattr(fs, "_scan_z", lambda exts, nxt: None)
            masked = fs._extend_difference_keys(B_keys, A, CFG)
        assert direct == masked


def test_extension_soundness_on_random_sets():
    # any difference-free witness of the projected set extends by one
    rng = random.Random(23)
    for _ in range(30):
        N = rng.randint(1, 8)
        A = random_admissible_set(N + 1, rng)
        prA = project_set(A, N)
        base = find_difference_free(prA, CFG).witness
        cert = extend_difference_free(A, base, CFG, debug=True)
        assert cert.claimed_size == len(base) + 1
        assert cert.verify()


def test_permutation_equivariance():
    rng = random.Random(17)
    for _ in range(20):
        N = rng.randint(2, 6)
        A = random_admissible_set(N, rng)
        perm = list(range(1, N + 1))
        rng.shuffle(perm)
        PA = permute_set(A, perm)
        cert = find_difference_free(PA, CFG)
        assert cert.claimed_size == N + 1
        assert is_free(cert.witness, PA, DIFFERENCE)


# ---------------------------------------------------------------------------
# sum finder

def test_find_sum_free_examples():
    A = cube_set(2, [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)])
    cert = find_sum_free(A, CFG)
    assert as_coords_set(cert.witness) == {(1, 0), (0, 1)}
    assert cert.self_sums_clear

    cert = find_sum_free(cube_set(1, [(1,), (-1,)]), CFG)
    assert as_coords_set(cert.witness) == {(1,)}

    cert = find_sum_free(full_cube_set(3, include_zero=False), CFG)
    assert cert.claimed_size == 3
    assert cert.verify()


def test_sum_finder_exhaustive_small_dims():
    for dim in (1, 2):
        for A in enumerate_admissible_sets(dim):
            cert = find_sum_free(A, CFG)
            assert cert.claimed_size == dim
            assert cert.verify()


# ---------------------------------------------------------------------------
# canonical witnesses and tightness

def test_witness_difference_structure():
    w3 = witness_difference(3)
    assert {v.coords for v in w3.vectors()} == {(1,), (-1,)}
    w4 = witness_difference(4)
    assert len(w4) == 6
    assert {v.serialize() for v in w4.vectors()} == {"+0", "-0", "0+", "0-", "+-", "-+"}
    assert len(witness_difference(5)) == 12
    for l in range(3, 7):
        assert len(witness_difference(l)) == 2 * (l - 2) + (l - 2) * (l - 3)


def test_witness_sum_structure():
    w2 = witness_sum(2)
    assert {v.coords for v in w2.vectors()} == {(1,), (-1,), (0,)}
    w3 = witness_sum(3)
    assert {v.serialize() for v in w3.vectors()} == {"+0", "-0", "0+", "0-", "00"}


def test_tightness_small_range():
    # full range 3..8 is covered by the acceptance suite
    for l in range(3, 7):
        size, _ = max_free_subset(witness_difference(l), DIFFERENCE, CFG)
        assert size == l - 1
    for l in range(2, 7):
        size, _ = max_free_subset(witness_sum(l), SUM, CFG)
        assert size == l - 1


# ---------------------------------------------------------------------------
# arrows and values

def test_arrow_examples():
    cert = arrow_holds("real_difference", 1, 2, "exhaustive", CFG)
    assert cert.holds and cert.sets_examined == 2

    cert = arrow_holds("real_difference", 2, 4, "exhaustive", CFG)
    assert not cert.holds
    counter = cert.counterexample
    assert counter["max_free"] < 4 and counter["exact"]
    A = SymmetricCubeSet.from_json(counter)
    assert not brute_force_exists_free(frozenset(v.coords for v in A.vectors()),
                                       DIFFERENCE, 4)

    cert = arrow_holds("real_sum", 2, 2, "exhaustive", CFG)
    assert cert.holds


def test_arrow_witness_strategy_guards_consistency():
    with pytest.raises(PreconditionError):
        arrow_holds("real_difference", 3, 4, "witness", CFG)  # 3 -> 4 holds


def test_arrow_theorem_backed_with_evidence():
    small = CFG.replace(evidence_sets=8)
    cert = arrow_holds("real_difference", 6, 7, "theorem_backed", small, seed=123)
    assert cert.holds and cert.evidence["sets"] == 8 and cert.evidence["seed"] == 123
    cert = arrow_holds("real_difference", 2, 5, "theorem_backed", small)
    assert not cert.holds and cert.counterexample["max_free"] == 3


def test_kottman_values():
    v2 = kottman_value(2, CFG)
    assert v2.value == 1 and v2.lower is None and v2.upper.holds
    assert v2.upper.sets_examined == 2

    v3 = kottman_value(3, CFG)
    assert v3.value == 2 and v3.upper.sets_examined == 8
    assert v3.lower.counterexample["max_free"] == 2

    v4 = kottman_value(4, CFG)
    assert v4.value == 3 and v4.upper.sets_examined == 2048

    small = CFG.replace(evidence_sets=4)
    v7 = kottman_value(7, small, seed=9)
    assert v7.value == 6
    assert v7.lower.N == 5 and v7.lower.counterexample["max_free"] == 6
    assert v7.upper.method == "theorem_backed" and v7.upper.evidence is not None


def test_sumfree_values():
    v1 = sumfree_value(1, CFG)
    assert v1.value == 1 and v1.lower is None

    v2 = sumfree_value(2, CFG)
    assert v2.value == 2 and v2.lower.counterexample["max_free"] == 1

    small = CFG.replace(evidence_sets=4)
    v4 = sumfree_value(4, small, seed=4)
    assert v4.value == 4 and v4.lower.counterexample["max_free"] == 3


def test_closed_forms_match_exhaustive_in_budget():
    # the theorem-backed arrows agree with full enumeration wherever the
    # exhaustive range reaches
    for N in (1, 2, 3):
        for l in range(1, 8):
            ex = arrow_holds("real_difference", N, l, "exhaustive", CFG)
            th = arrow_holds("real_difference", N, l, "theorem_backed", CFG)
            assert ex.holds == th.holds == (l <= N + 1)
            ex = arrow_holds("real_sum", N, l, "exhaustive", CFG)
            th = arrow_holds("real_sum", N, l, "theorem_backed", CFG)
            assert ex.holds == th.holds == (l <= N)


def test_oracle_consistency_on_enumerated_c2():
    for A in enumerate_admissible_sets(2):
        size, _ = max_free_subset(A, DIFFERENCE, CFG)
        cert = find_difference_free(A, CFG)
        assert cert.claimed_size <= size
        assert size >= A.dim + 1


def test_certificate_json_shape():
    cert = find_sum_free(witness_sum(3), CFG)
    doc = cert.to_json()
    assert doc["mode"] == "sum"
    assert doc["claimed_size"] == 2
    assert "self_sums_clear" in doc
    assert doc["witness"] == sorted(doc["witness"])


def test_oracle_budget_is_enforced():
    from cubesep.errors import BudgetExceededError
    big = witness_difference(10)  # 72 members, above the 64-vertex budget
    assert len(big) == 72
    with pytest.raises(BudgetExceededError):
        max_free_subset(big, DIFFERENCE, CFG)
    relaxed = CFG.replace(mis_vertex_budget=80)
    size, _ = max_free_subset(big, DIFFERENCE, relaxed)
    assert size == 9


def test_difference_finder_fallback_engages_when_chain_breaks(monkeypatch):
    import cubesep.freesets as fs

    def broken_chain(A, config, debug=False):
        raise fs.SearchDefectError("forced for the test")

    monkeypatch.setattr(fs, "chain_difference_free", broken_chain)
    A = witness_difference(4)
    cert = fs.find_difference_free(A, CFG)
    assert cert.claimed_size == 3 and cert.verify()
