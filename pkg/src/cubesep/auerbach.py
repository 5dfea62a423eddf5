"""Auerbach bases: unit vectors whose biorthogonal functionals are also
unit, found by maximizing |det| over tuples of unit-ball points.

At any tuple that no single-column replacement improves, the cofactor
functionals scaled by 1/det are automatically unit in the dual norm, so a
converged coordinate ascent *is* an Auerbach system; the optimizer's job
is reaching such a point, the verifier's job is refusing anything else.
Exact specs run the whole search in rational arithmetic and must verify
with residuals exactly zero; float paths verify against the configured
tolerance.  The best verified candidate by |det| wins, never an
unverified one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .config import Config
from .errors import AuerbachSearchError, DimensionMismatchError, PreconditionError
from .linalg import cofactor_column, dot, mat_det, mat_inverse
from .norms import COMPLEX, LP, VERTICES, NormOracle, NormSpec, dual_oracle_for, oracle_for

_DEFAULT = Config()


def _transpose(cols: Sequence[Sequence]) -> list[list]:
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(len(cols[0]))]


def _vec_repr(v) -> str:
    return ",".join(str(x) for x in v)


@dataclass
class AuerbachQuality:
    biorth_residual: float
    primal_residual: float
    dual_residual: float
    exact: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "biorth_residual": self.biorth_residual,
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "exact": self.exact,
            "passed": self.passed,
        }


@dataclass
class AuerbachBasis:
    spec: NormSpec
    vectors: tuple[tuple, ...]       # unit vectors (columns)
    functionals: tuple[tuple, ...]   # biorthogonal coefficient rows
    exact: bool
    det_abs: float
    quality: Optional[AuerbachQuality] = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        def enc(vec):
            out = []
            for x in vec:
                if isinstance(x, complex):
                    out.append([x.real, x.imag])
                elif isinstance(x, float):
                    out.append(x)
                else:
                    q = Fraction(x)
                    out.append(f"{q.numerator}/{q.denominator}"
                               if q.denominator != 1 else str(q.numerator))
            return out
        return {
            "spec": self.spec.to_json(),
            "vectors": [enc(v) for v in self.vectors],
            "functionals": [enc(f) for f in self.functionals],
            "exact": self.exact,
            "det_abs": self.det_abs,
            "quality": self.quality.to_json() if self.quality else None,
        }

    @staticmethod
    def from_json(data: dict) -> "AuerbachBasis":
        spec = NormSpec.from_json(data["spec"])
        exact = bool(data["exact"])

        def dec(vec):
            out = []
            for x in vec:
                if isinstance(x, list):
                    out.append(complex(x[0], x[1]))
                elif isinstance(x, str):
                    out.append(Fraction(x))
                elif exact and isinstance(x, int):
                    out.append(Fraction(x))
                else:
                    out.append(float(x))
            return tuple(out)
        basis = AuerbachBasis(
            spec=spec,
            vectors=tuple(dec(v) for v in data["vectors"]),
            functionals=tuple(dec(f) for f in data["functionals"]),
            exact=exact,
            det_abs=float(data["det_abs"]),
        )
        return basis


def standard_auerbach(spec: NormSpec) -> AuerbachBasis:
    """The identity system e_k / e_k*; an Auerbach basis for every lp spec
    (all lp norms of basis vectors and their duals are 1)."""
    if spec.kind != LP:
        raise PreconditionError("the identity fallback applies to lp specs only")
    n = spec.dim
    if spec.field == COMPLEX:
        one, zero = 1 + 0j, 0j
    elif spec.is_exact:
        one, zero = Fraction(1), Fraction(0)
    else:
        one, zero = 1.0, 0.0
    vecs = tuple(tuple(one if i == k else zero for i in range(n)) for k in range(n))
    return AuerbachBasis(spec, vecs, vecs, exact=spec.is_exact, det_abs=1.0)


def verify_auerbach(
    basis: AuerbachBasis, spec: Optional[NormSpec] = None, config: Config = _DEFAULT
) -> AuerbachQuality:
    """Residual report: biorthogonality, primal norms, dual norms.

    The exact path (exact spec, rational data) passes only with residuals
    exactly zero; everything else must stay within the tolerance.
    """
    spec = spec or basis.spec
    oracle = oracle_for(spec)
    dual = dual_oracle_for(spec)
    n = len(basis.vectors)
    data_exact = all(
        not isinstance(x, (float, complex))
        for vec in itertools.chain(basis.vectors, basis.functionals)
        for x in vec
    )
    exact = spec.is_exact and data_exact

    biorth = Fraction(0) if exact else 0.0
    for a, f in enumerate(basis.functionals):
        for b, x in enumerate(basis.vectors):
            val = dot(f, x)
            delta = 1 if a == b else 0
            r = abs(val - delta)
            if r > biorth:
                biorth = r
    primal = max(abs(oracle.value(x) - 1) for x in basis.vectors)
    dualres = max(abs(dual.value(f) - 1) for f in basis.functionals)

    if exact:
        passed = biorth == 0 and primal == 0 and dualres == 0
    else:
        tau = config.tau
        passed = float(biorth) <= tau and float(primal) <= tau and float(dualres) <= tau
    return AuerbachQuality(float(biorth), float(primal), float(dualres), exact, passed)


def coefficient_map(basis: AuerbachBasis, x: Sequence) -> tuple:
    """T(x) = (x*_k(x)): the coefficients of x in the basis; a norm-one map
    into the sup-norm coefficient space."""
    if len(x) != basis.dim:
        raise DimensionMismatchError("vector length differs from basis dimension")
    return tuple(dot(f, x) for f in basis.functionals)


# ---------------------------------------------------------------------------
# determinant maximization

def _det_cols(cols) -> object:
    return mat_det(_transpose(cols))


def _functionals_for(cols) -> tuple[tuple, ...]:
    inv = mat_inverse(_transpose(cols))
    return tuple(tuple(row) for row in inv)


def _ascend(cols: list, oracle: NormOracle, exact: bool, config: Config):
    """Cyclic column replacement with the cofactor direction; returns the
    columns and |det| at a coordinate-wise maximum."""
    det = _det_cols(cols)
    if det == 0:
        return None
    det_abs = abs(det)
    n = len(cols)
    for _ in range(config.auerbach_max_passes):
        improved = False
        for k in range(n):
            rows = _transpose(cols)
            c = cofactor_column(rows, k)
            if all(x == 0 for x in c):
                continue
            x = oracle.unit_argmax(tuple(c))
            val = abs(dot(c, x))
            if exact:
                better = val > det_abs
            else:
                better = float(val) > float(det_abs) * (1.0 + config.ascent_tol)
            if better:
                cols[k] = tuple(x)
                det_abs = val
                improved = True
        if not improved:
            break
    return cols, det_abs


def _random_unit(spec: NormSpec, oracle: NormOracle, rng: random.Random):
    n = spec.dim
    while True:
        if spec.field == COMPLEX:
            v = tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n))
        elif spec.is_exact:
            v = tuple(Fraction(rng.randint(-9, 9)) for _ in range(n))
        else:
            v = tuple(rng.gauss(0, 1) for _ in range(n))
        if any(x != 0 for x in v):
            nrm = oracle.value(v)
            if nrm != 0:
                return tuple(x / nrm for x in v)


def _normalized_standard(spec: NormSpec, oracle: NormOracle):
    n = spec.dim
    cols = []
    for k in range(n):
        if spec.field == COMPLEX:
            e = tuple(1 + 0j if i == k else 0j for i in range(n))
        elif spec.is_exact or spec.kind != LP:
            e = tuple(Fraction(1) if i == k else Fraction(0) for i in range(n))
        else:
            e = tuple(1.0 if i == k else 0.0 for i in range(n))
        nrm = oracle.value(e)
        cols.append(tuple(x / nrm for x in e))
    return cols


def _vertex_enumeration(spec: NormSpec, config: Config):
    """Exact search over tuples of gauge-normalized signed points (the
    multilinear |det| attains its maximum at extreme points, and the
    normalized point list contains every vertex of the ball)."""
    gauge = oracle_for(spec)
    signed = []
    for p in spec.points:
        for sign in (1, -1):
            v = tuple(sign * Fraction(x) for x in p)
            nrm = gauge.value(v)
            if nrm == 0:
                continue  # the zero point adds nothing to the hull
            v = tuple(x / nrm for x in v)
            if v not in signed:
                signed.append(v)
    n = spec.dim
    if len(signed) ** n > config.auerbach_vertex_tuple_budget:
        return None
    best = None
    best_abs = Fraction(0)
    for tup in itertools.product(signed, repeat=n):
        d = abs(_det_cols(list(tup)))
        if d > best_abs or (d == best_abs and best is not None and d > 0 and list(tup) < list(best)):
            best_abs = d
            best = tup
    if best is None or best_abs == 0:
        return None
    return [tuple(v) for v in best]


def auerbach_basis(
    spec: NormSpec, config: Config = _DEFAULT, seed: Optional[int] = None
) -> AuerbachBasis:
    """Determinant maximization over unit vectors; the output always passes
    verify_auerbach (or the search errors with the best residuals seen)."""
    oracle = oracle_for(spec)
    rng = random.Random(config.seed if seed is None else seed)
    candidates: list[list] = []

    if spec.kind == VERTICES:
        cols = _vertex_enumeration(spec, config)
        if cols is not None:
            candidates.append(cols)

    if not candidates:
        starts = [_normalized_standard(spec, oracle)]
        for _ in range(max(0, config.auerbach_restarts - 1)):
            starts.append([_random_unit(spec, oracle, rng) for _ in range(spec.dim)])
        for cols in starts:
            out = _ascend(list(cols), oracle, spec.is_exact, config)
            if out is not None:
                candidates.append(out[0])
        if spec.kind == LP:
            candidates.append(list(standard_auerbach(spec).vectors))

    best: Optional[AuerbachBasis] = None
    best_key = None
    best_residuals = None
    for cols in candidates:
        try:
            functionals = _functionals_for(cols)
        except ZeroDivisionError:
            continue
        det_abs = abs(_det_cols(cols))
        cand = AuerbachBasis(spec, tuple(tuple(v) for v in cols), functionals,
                             exact=spec.is_exact and spec.field != COMPLEX,
                             det_abs=float(det_abs))
        quality = verify_auerbach(cand, spec, config)
        if not quality.passed:
            if best_residuals is None or quality.biorth_residual < best_residuals.biorth_residual:
                best_residuals = quality
            continue
        cand.quality = quality
        key = (-float(det_abs), _vec_repr([x for v in cand.vectors for x in v]))
        if best is None or key < best_key:
            best = cand
            best_key = key
    if best is None:
        raise AuerbachSearchError(
            "no candidate basis passed verification", best_residuals=best_residuals
        )
    return best
