"""Separated-family pipelines: unit coefficient sets, pullbacks, margins."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from cubesep.auerbach import auerbach_basis, standard_auerbach
from cubesep.config import Config
from cubesep.errors import PreconditionError
from cubesep.norms import NormSpec, oracle_for
from cubesep.pipeline import (
    complex_separated_points,
    enumerate_unit_ternary,
    plus_separated_points,
    realified_separated_points,
    separated_points,
    verify_separation,
)

CFG = Config()
HEX = NormSpec.facets(2, [["1", "0"], ["0", "1"], ["1", "1"]])


def test_unit_set_linf_standard_basis_is_full_cube():
    spec = NormSpec.lp(2, "inf")
    unit = enumerate_unit_ternary(standard_auerbach(spec), oracle_for(spec), CFG)
    assert len(unit.cube_set) == 8  # every nonzero ternary vector has sup norm 1
    assert unit.tau is None


def test_unit_set_l1_standard_basis_is_signed_basis():
    spec = NormSpec.lp(3, 1)
    unit = enumerate_unit_ternary(standard_auerbach(spec), oracle_for(spec), CFG)
    assert {v.serialize() for v in unit.cube_set.vectors()} == {
        "+00", "-00", "0+0", "0-0", "00+", "00-"}


def test_unit_set_l2_standard_basis():
    spec = NormSpec.lp(2, 2)
    unit = enumerate_unit_ternary(standard_auerbach(spec), oracle_for(spec), CFG)
    assert {v.serialize() for v in unit.cube_set.vectors()} == {"+0", "-0", "0+", "0-"}
    assert unit.tau == CFG.tau


@pytest.mark.parametrize("spec", [NormSpec.lp(2, "inf"), NormSpec.lp(3, "inf"), HEX])
def test_unit_set_closure_property(spec):
    # unit coefficient vectors whose difference has norm at most 1 differ
    # by another unit coefficient vector
    basis = auerbach_basis(spec, CFG, seed=0)
    oracle = oracle_for(spec)
    unit = enumerate_unit_ternary(basis, oracle, CFG)
    members = {v.coords for v in unit.cube_set.vectors()}
    for a, b in itertools.permutations(members, 2):
        d = tuple(x - y for x, y in zip(a, b))
        if any(abs(c) > 1 for c in d):
            continue
        point = tuple(
            sum(dk * basis.vectors[k][i] for k, dk in enumerate(d))
            for i in range(spec.dim)
        )
        if oracle.cmp_one(point) <= 0:
            assert d in members


def test_separated_points_l1_dim3():
    fam = separated_points(NormSpec.lp(3, 1), CFG, seed=0)
    assert len(fam.points) == 4
    assert fam.exact and fam.passed
    assert fam.margin == 1.0 and fam.margin_exact == 1


def test_separated_points_linf_dim2_distances_two():
    fam = separated_points(NormSpec.lp(2, "inf"), CFG, seed=0)
    assert len(fam.points) == 3
    for k in range(3):
        for l in range(k + 1, 3):
            assert fam.pairwise[k][l] == 2.0
    assert fam.margin == 1.0


def test_plus_separated_l1_dim2():
    fam = plus_separated_points(NormSpec.lp(2, 1), CFG, seed=0)
    assert len(fam.points) == 2
    assert fam.margin == 1.0
    # no antipodal pair: every pairwise sum is long, never zero
    for k in range(2):
        for l in range(k + 1, 2):
            assert fam.pairwise[k][l] > 1.0


def test_plus_separated_linf_dim2():
    fam = plus_separated_points(NormSpec.lp(2, "inf"), CFG, seed=0)
    assert len(fam.points) == 2
    assert fam.margin == 1.0


def test_sum_ground_set_needs_zero():
    # the raw unit set admits sum-free subsets with antipodal pairs (their
    # pulled-back sum would be 0, not long); adding the zero vector to the
    # ground set rules every such subset out
    spec = NormSpec.lp(2, 1)
    unit = enumerate_unit_ternary(standard_auerbach(spec), oracle_for(spec), CFG)
    from cubesep.freesets import SUM, max_free_subset
    size, witness = max_free_subset(unit.cube_set, SUM, CFG)
    assert size == 4  # the whole signed basis, antipodal pairs included
    assert any((-v) in list(witness) for v in witness)
    size0, _ = max_free_subset(unit.cube_set.with_zero(), SUM, CFG)
    assert size0 == 2
    fam = plus_separated_points(spec, CFG, seed=0)
    coeffs = {c.serialize() for c in fam.coefficients}
    assert coeffs == {"+0", "0+"}


def test_separated_points_sizes_and_margins_assorted_dims():
    for dim in (2, 3, 4, 5):
        fam = separated_points(NormSpec.lp(dim, "inf"), CFG, seed=0)
        assert len(fam.points) == dim + 1
        assert fam.margin_exact > 0
        gam = plus_separated_points(NormSpec.lp(dim, 1), CFG, seed=0)
        assert len(gam.points) == dim


def test_l2_family_reports_margin():
    fam = separated_points(NormSpec.lp(3, 2), CFG, seed=0)
    assert not fam.exact
    assert fam.margin >= CFG.margin_min
    assert fam.margin == pytest.approx(2 ** 0.5 - 1, abs=1e-9)


def test_complex_family_dim1_is_fourth_roots():
    fam = complex_separated_points(NormSpec.lp(1, "inf", "complex"), CFG, seed=0)
    assert len(fam.points) == 4
    assert {c.serialize() for c in fam.coefficients} == {"+", "-", "i", "j"}
    assert fam.margin == pytest.approx(2 ** 0.5 - 1, abs=1e-9)


def test_complex_family_sizes():
    for n in (1, 2, 3):
        fam = complex_separated_points(NormSpec.lp(n, "inf", "complex"), CFG, seed=0)
        assert len(fam.points) == 2 * n + 2
        assert fam.passed


def test_complex_route_beats_realified_route():
    complex_fam = complex_separated_points(NormSpec.lp(2, "inf", "complex"), CFG, seed=0)
    real_fam = realified_separated_points(NormSpec.lp(2, "inf", "complex"), CFG, seed=0)
    assert len(complex_fam.points) == 6
    assert len(real_fam.points) == 5
    assert real_fam.passed and real_fam.realified


def test_hand_supplied_basis_feeds_pipeline():
    # a verified but non-det-maximizing basis still yields a valid family
    spec = NormSpec.lp(2, "inf")
    fam = separated_points(spec, CFG, seed=0, basis=standard_auerbach(spec))
    assert len(fam.points) == 3 and fam.passed
    assert fam.margin_exact > 0
    # a non-unit basis is refused up front
    from cubesep.auerbach import AuerbachBasis
    bad = AuerbachBasis(
        spec=spec,
        vectors=((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1))),
        functionals=((Fraction(2), Fraction(0)), (Fraction(0), Fraction(1))),
        exact=True,
        det_abs=0.5,
    )
    with pytest.raises(PreconditionError):
        separated_points(spec, CFG, seed=0, basis=bad)


def test_verify_separation_catches_tampering():
    fam = separated_points(NormSpec.lp(3, 1), CFG, seed=0)
    report = verify_separation(fam, None, CFG)
    assert report.passed and report.margin == 1.0
    # duplicate point: margin collapses to -1
    tampered = fam
    tampered.coefficients = (fam.coefficients[0],) * len(fam.coefficients)
    report = verify_separation(tampered, None, CFG)
    assert not report.passed
    assert report.margin == -1.0


def test_random_rational_polytope_pipelines_are_exact():
    import random
    from fractions import Fraction as F
    from cubesep.errors import DegenerateSpecError

    rng = random.Random(77)
    done = 0
    while done < 5:
        dim = rng.choice((2, 3))
        rows = [[F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim)]
                for _ in range(rng.randint(dim, dim + 2))]
        try:
            spec = (NormSpec.facets(dim, rows) if rng.random() < 0.5
                    else NormSpec.vertices(dim, rows))
        except DegenerateSpecError:
            continue
        fam = separated_points(spec, CFG, seed=done)
        assert fam.exact and fam.passed and fam.margin_exact > 0
        assert len(fam.points) == dim + 1
        gam = plus_separated_points(spec, CFG, seed=done)
        assert gam.passed and len(gam.points) == dim
        done += 1


def test_complex_l2_family_reports_margin():
    fam = complex_separated_points(NormSpec.lp(2, 2, "complex"), CFG, seed=0)
    assert len(fam.points) == 6
    assert not fam.exact
    assert fam.margin >= CFG.margin_min


def test_single_point_sum_family_serializes_cleanly():
    import json
    fam = plus_separated_points(NormSpec.lp(1, 1), CFG, seed=0)
    assert len(fam.points) == 1 and fam.passed
    doc = fam.to_json()
    assert doc["margin"] is None  # no pairs to separate
    json.dumps(doc)  # strict JSON, no IEEE infinities


def test_pairwise_table_shape():
    fam = separated_points(HEX, CFG, seed=0)
    m = len(fam.points)
    assert len(fam.pairwise) == m and all(len(row) == m for row in fam.pairwise)
    for k in range(m):
        assert fam.pairwise[k][k] == 0.0
    doc = fam.to_json()
    assert doc["mode"] == "difference" and doc["exact"] is True
    assert "margin_exact" in doc
