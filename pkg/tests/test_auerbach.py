"""Auerbach basis search and verification."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cubesep.auerbach import (
    AuerbachBasis,
    auerbach_basis,
    coefficient_map,
    standard_auerbach,
    verify_auerbach,
)
from cubesep.config import Config
from cubesep.norms import NormSpec, norm_eval, oracle_for

CFG = Config()


def test_linf_dim2_det_maximizer():
    spec = NormSpec.lp(2, "inf")
    basis = auerbach_basis(spec, CFG, seed=0)
    assert basis.det_abs == 2.0
    assert basis.quality.passed and basis.quality.exact
    # duals of a +-1 determinant maximizer have entries +-1/2
    assert {abs(x) for f in basis.functionals for x in f} == {Fraction(1, 2)}
    # biorthogonality holds exactly
    for a, f in enumerate(basis.functionals):
        for b, x in enumerate(basis.vectors):
            assert sum(p * q for p, q in zip(f, x)) == (1 if a == b else 0)


def test_standard_basis_is_auerbach_for_lp():
    for spec in (NormSpec.lp(3, 1), NormSpec.lp(3, 2), NormSpec.lp(3, "inf"),
                 NormSpec.lp(2, Fraction(7, 3)), NormSpec.lp(2, "inf", "complex")):
        q = verify_auerbach(standard_auerbach(spec), spec, CFG)
        assert q.passed


def test_vertex_enumeration_l1_dim3():
    spec = NormSpec.vertices(3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    basis = auerbach_basis(spec, CFG, seed=0)
    assert basis.det_abs == 1.0
    assert basis.quality.exact and basis.quality.passed


def test_scaled_vector_fails_verification():
    spec = NormSpec.lp(2, "inf")
    good = standard_auerbach(spec)
    bad = AuerbachBasis(
        spec=spec,
        vectors=((Fraction(2), Fraction(0)), good.vectors[1]),
        functionals=good.functionals,
        exact=True,
        det_abs=2.0,
    )
    q = verify_auerbach(bad, spec, CFG)
    assert not q.passed
    assert q.primal_residual == 1.0


def test_coefficient_map_is_biorthogonal_projection():
    spec = NormSpec.lp(3, "inf")
    basis = auerbach_basis(spec, CFG, seed=0)
    n = basis.dim
    for j, x in enumerate(basis.vectors):
        coeffs = coefficient_map(basis, x)
        assert list(coeffs) == [1 if k == j else 0 for k in range(n)]
    diff = tuple(a - b for a, b in zip(basis.vectors[0], basis.vectors[1]))
    assert list(coefficient_map(basis, diff)) == [1, -1, 0]


@pytest.mark.parametrize("spec", [NormSpec.lp(3, "inf"), NormSpec.lp(3, 1)])
def test_operator_bound_sampled(spec):
    # sup-norm of the coefficients never exceeds the norm of the vector
    basis = auerbach_basis(spec, CFG, seed=0)
    rng = random.Random(3)
    for _ in range(1000):
        x = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(3))
        coeffs = coefficient_map(basis, x)
        assert max(abs(c) for c in coeffs) <= norm_eval(spec, x)


def test_operator_bound_float_path():
    spec = NormSpec.lp(3, 2)
    basis = auerbach_basis(spec, CFG, seed=0)
    oracle = oracle_for(spec)
    rng = random.Random(4)
    for _ in range(300):
        x = tuple(rng.gauss(0, 1) for _ in range(3))
        coeffs = coefficient_map(basis, x)
        assert max(abs(c) for c in coeffs) <= oracle.value(x) + 1e-9


def test_operator_bound_complex():
    spec = NormSpec.lp(2, "inf", "complex")
    basis = auerbach_basis(spec, CFG, seed=0)
    oracle = oracle_for(spec)
    rng = random.Random(5)
    for _ in range(300):
        x = tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(2))
        coeffs = coefficient_map(basis, x)
        assert max(abs(c) for c in coeffs) <= oracle.value(x) + 1e-9


def test_complex_linf_bases():
    b2 = auerbach_basis(NormSpec.lp(2, "inf", "complex"), CFG, seed=0)
    assert b2.det_abs == pytest.approx(2.0, abs=1e-9)
    assert b2.quality.passed
    b3 = auerbach_basis(NormSpec.lp(3, "inf", "complex"), CFG, seed=0)
    assert b3.det_abs >= 4.0  # beats every real +-1 matrix (max det 4)
    assert b3.quality.passed


def test_determinism_with_seed():
    spec = NormSpec.lp(4, "inf")
    a = auerbach_basis(spec, CFG, seed=7)
    b = auerbach_basis(spec, CFG, seed=7)
    assert a.vectors == b.vectors and a.functionals == b.functionals


def test_hexagon_exact_basis():
    spec = NormSpec.facets(2, [["1", "0"], ["0", "1"], ["1", "1"]])
    basis = auerbach_basis(spec, CFG, seed=0)
    q = basis.quality
    assert q.exact and q.passed
    assert q.biorth_residual == 0 and q.primal_residual == 0 and q.dual_residual == 0


def test_random_rational_polytopes_give_exact_bases():
    from cubesep.errors import DegenerateSpecError
    rng = random.Random(2024)
    done = 0
    while done < 6:
        dim = rng.choice((2, 3))
        m = rng.randint(dim, dim + 3)
        rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim)]
                for _ in range(m)]
        try:
            spec = (NormSpec.facets(dim, rows) if rng.random() < 0.5
                    else NormSpec.vertices(dim, rows))
        except DegenerateSpecError:
            continue  # random rows may fail the rank requirement
        basis = auerbach_basis(spec, CFG, seed=done)
        q = verify_auerbach(basis, spec, CFG)
        assert q.exact and q.passed
        assert q.biorth_residual == 0 and q.primal_residual == 0 and q.dual_residual == 0
        done += 1


def test_vertices_spec_tolerates_zero_point():
    # a zero point adds nothing to the hull and must not break enumeration
    spec = NormSpec.vertices(2, [["0", "0"], ["1", "0"], ["0", "1"]])
    basis = auerbach_basis(spec, CFG, seed=0)
    assert basis.quality.passed and basis.det_abs == 1.0


def test_basis_json_round_trip():
    for spec in (NormSpec.lp(2, "inf"), NormSpec.lp(2, 2), NormSpec.lp(2, "inf", "complex")):
        basis = auerbach_basis(spec, CFG, seed=0)
        again = AuerbachBasis.from_json(basis.to_json())
        assert again.vectors == basis.vectors
        assert again.functionals == basis.functionals
        q = verify_auerbach(again, spec, CFG)
        assert q.passed
