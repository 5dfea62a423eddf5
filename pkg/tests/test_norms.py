"""Norm oracles: lp, facet and vertex polytopes, duality, exact gauges."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from cubesep.errors import DegenerateSpecError, DimensionMismatchError
from cubesep.norms import NormSpec, dual_norm_eval, norm_eval, oracle_for
from cubesep.linalg import dot

HEX = NormSpec.facets(2, [["1", "0"], ["0", "1"], ["1", "1"]])
CROSS3 = NormSpec.vertices(3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])


def test_norm_eval_examples():
    assert norm_eval(NormSpec.lp(3, "inf"), (1, -1, 0)) == 1
    assert norm_eval(NormSpec.lp(3, 1), (1, -1, 0)) == 2
    assert norm_eval(HEX, (1, -1)) == 1  # max(1, 1, 0)


def test_dual_norm_examples():
    assert dual_norm_eval(NormSpec.lp(2, "inf"), (1, 1)) == 2
    assert dual_norm_eval(NormSpec.lp(2, 2), (3.0, 4.0)) == pytest.approx(5.0)
    l1ball = NormSpec.vertices(2, [["1", "0"], ["0", "1"]])
    assert dual_norm_eval(l1ball, (1, -1)) == 1


def test_vertices_gauge_is_l1_for_cross_polytope():
    rng = random.Random(1)
    for _ in range(40):
        v = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3))
        assert norm_eval(CROSS3, v) == norm_eval(NormSpec.lp(3, 1), v)


def test_degenerate_specs_rejected():
    with pytest.raises(DegenerateSpecError):
        NormSpec.facets(2, [["1", "0"]])  # rank 1
    with pytest.raises(DegenerateSpecError):
        NormSpec.vertices(3, [["1", "0", "0"], ["0", "1", "0"]])
    with pytest.raises(DegenerateSpecError):
        NormSpec.lp(2, Fraction(1, 2))
    with pytest.raises(DegenerateSpecError):
        NormSpec.lp(2, -1)  # must not alias the sup-norm sentinel
    with pytest.raises(DimensionMismatchError):
        norm_eval(HEX, (1, 2, 3))


def test_complex_polytopes_rejected():
    with pytest.raises(DegenerateSpecError):
        NormSpec.from_json({"dim": 2, "field": "complex",
                            "norm": {"type": "polytope_facets",
                                     "functionals": [["1", "0"], ["0", "1"]]}})


def test_spec_json_round_trip():
    for spec in (NormSpec.lp(3, "inf"), NormSpec.lp(2, Fraction(3, 2)), HEX, CROSS3,
                 NormSpec.lp(2, "inf", "complex")):
        again = NormSpec.from_json(spec.to_json())
        assert again == spec
    doc = NormSpec.lp(2, Fraction(3, 2)).to_json()
    assert doc["norm"]["p"] == "3/2"


def _axiom_sample(spec, rng, exact):
    if exact:
        return tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 5))
                     for _ in range(spec.dim))
    if spec.field == "complex":
        return tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(spec.dim))
    return tuple(rng.gauss(0, 1) for _ in range(spec.dim))


@pytest.mark.parametrize("spec", [
    NormSpec.lp(3, 1), NormSpec.lp(3, "inf"), NormSpec.lp(3, 2),
    NormSpec.lp(2, Fraction(3, 2)), HEX, CROSS3, NormSpec.lp(2, "inf", "complex"),
])
def test_norm_axioms_sampled(spec):
    rng = random.Random(hash(str(spec.to_json())) & 0xFFFF)
    oracle = oracle_for(spec)
    exact = oracle.exact
    tol = 0 if exact else 4e-9
    for _ in range(1000):
        x = _axiom_sample(spec, rng, exact)
        y = _axiom_sample(spec, rng, exact)
        nx, ny = oracle.value(x), oracle.value(y)
        nxy = oracle.value(tuple(a + b for a, b in zip(x, y)))
        assert nxy <= nx + ny + tol
        for lam in (-2, -1, Fraction(1, 2), 3):
            lam_eff = lam if exact or spec.field != "complex" else complex(lam)
            scaled = oracle.value(tuple((lam_eff if not exact else lam) * a for a in x))
            if exact:
                assert scaled == abs(lam) * nx
            else:
                assert abs(scaled - abs(lam) * nx) <= tol * max(1.0, abs(nx))


def _facet_ball_vertices_2d(functionals):
    """All intersections of two signed facet lines that satisfy every
    constraint: the vertex set of the planar facet ball."""
    signed = [tuple(Fraction(x) for x in f) for f in functionals]
    signed += [tuple(-x for x in f) for f in signed]
    verts = set()
    for f, g in itertools.combinations(signed, 2):
        detm = f[0] * g[1] - f[1] * g[0]
        if detm == 0:
            continue
        x = (g[1] - f[1]) / detm
        y = (f[0] - g[0]) / detm
        if all(abs(dot(h, (x, y))) <= 1 for h in signed):
            verts.add((x, y))
    return verts


def test_duality_consistency_on_enumerated_vertices():
    verts = _facet_ball_vertices_2d(HEX.functionals)
    assert verts  # hexagon has 6 vertices
    rng = random.Random(5)
    for _ in range(50):
        phi = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
        brute = max(abs(dot(phi, v)) for v in verts)
        assert dual_norm_eval(HEX, phi) == brute


def test_dual_of_vertices_is_support_function():
    pts = CROSS3.points
    rng = random.Random(6)
    for _ in range(50):
        phi = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
        brute = max(abs(dot(phi, p)) for p in pts)
        assert dual_norm_eval(CROSS3, phi) == brute


def test_gauge_of_zero_is_zero():
    assert norm_eval(CROSS3, (0, 0, 0)) == 0
