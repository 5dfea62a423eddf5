"""Norm descriptions and evaluation oracles.

Three description kinds: lp norms, polytopes by facet functionals (unit
ball {x : |f.x| <= 1}) and polytopes by vertices (unit ball the symmetric
convex hull).  Real l1/linf and both polytope kinds evaluate in exact
rational arithmetic, so unit membership and strict separation are decided
without tolerances.  Other exponents and every complex norm run on floats
and carry the configured tolerance through all downstream claims.

File format: {"dim": n, "field": "real"|"complex",
              "norm": {"type": "lp", "p": "2"}
                    | {"type": "polytope_facets", "functionals": [["1","0"], ...]}
                    | {"type": "polytope_vertices", "points": [...]}}
with rationals as "p/q" strings.  Complex specs support lp only: a complex
polytope described by moduli constraints is not a polytope, so it has no
exact rational representation here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateSpecError, DimensionMismatchError, PreconditionError
from .linalg import dot, mat_rank
from .simplex import facet_ball_argmax, vertices_gauge

REAL = "real"
COMPLEX = "complex"

LP = "lp"
FACETS = "polytope_facets"
VERTICES = "polytope_vertices"

INF = "inf"  # sentinel for p = infinity inside NormSpec (never a valid Fraction)


def _parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text)
    raise ValueError(f"expected a rational as 'p/q' string, got {text!r}")


def _format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


@dataclass(frozen=True)
class NormSpec:
    dim: int
    field: str
    kind: str
    p: Optional[Fraction] = None                  # INF sentinel for sup norm
    functionals: Optional[tuple[tuple[Fraction, ...], ...]] = None
    points: Optional[tuple[tuple[Fraction, ...], ...]] = None

    def __post_init__(self):
        if self.dim < 1:
            raise DegenerateSpecError("dimension must be positive")
        if self.field not in (REAL, COMPLEX):
            raise DegenerateSpecError(f"unknown scalar field {self.field!r}")
        if self.kind == LP:
            if self.p is None or (self.p != INF and self.p < 1):
                raise DegenerateSpecError("lp norms need p >= 1 (or infinity)")
        elif self.kind in (FACETS, VERTICES):
            if self.field == COMPLEX:
                raise DegenerateSpecError("complex specs support lp norms only")
            rows = self.functionals if self.kind == FACETS else self.points
            if not rows:
                raise DegenerateSpecError("polytope description is empty")
            if any(len(r) != self.dim for r in rows):
                raise DegenerateSpecError("polytope row length differs from dimension")
            if mat_rank([list(r) for r in rows]) != self.dim:
                raise DegenerateSpecError(
                    "polytope description does not span the space; norm is degenerate"
                )
        else:
            raise DegenerateSpecError(f"unknown norm kind {self.kind!r}")

    # constructors ---------------------------------------------------------
    @staticmethod
    def lp(dim: int, p, field: str = REAL) -> "NormSpec":
        if p in ("inf", "infinity", math.inf):
            return NormSpec(dim, field, LP, p=INF)
        return NormSpec(dim, field, LP, p=_parse_rational(p))

    @staticmethod
    def facets(dim: int, functionals) -> "NormSpec":
        rows = tuple(tuple(_parse_rational(x) for x in f) for f in functionals)
        return NormSpec(dim, REAL, FACETS, functionals=rows)

    @staticmethod
    def vertices(dim: int, points) -> "NormSpec":
        rows = tuple(tuple(_parse_rational(x) for x in p) for p in points)
        return NormSpec(dim, REAL, VERTICES, points=rows)

    @property
    def is_exact(self) -> bool:
        if self.field == COMPLEX:
            return False
        if self.kind == LP:
            return self.p == INF or self.p == 1
        return True

    def to_json(self) -> dict:
        if self.kind == LP:
            norm = {"type": LP, "p": "inf" if self.p == INF else _format_rational(self.p)}
        elif self.kind == FACETS:
            norm = {"type": FACETS,
                    "functionals": [[_format_rational(x) for x in f] for f in self.functionals]}
        else:
            norm = {"type": VERTICES,
                    "points": [[_format_rational(x) for x in p] for p in self.points]}
        return {"dim": self.dim, "field": self.field, "norm": norm}

    @staticmethod
    def from_json(data: dict) -> "NormSpec":
        dim = int(data["dim"])
        field = data.get("field", REAL)
        norm = data["norm"]
        kind = norm["type"]
        if kind == LP:
            return NormSpec.lp(dim, norm["p"], field)
        if field == COMPLEX:
            raise DegenerateSpecError("complex specs support lp norms only")
        if kind == FACETS:
            return NormSpec.facets(dim, norm["functionals"])
        if kind == VERTICES:
            return NormSpec.vertices(dim, norm["points"])
        raise DegenerateSpecError(f"unknown norm kind {kind!r}")

    @staticmethod
    def load(path: str) -> "NormSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return NormSpec.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# oracles

class NormOracle:
    """Evaluation interface: ``value`` returns the norm (Fraction on the
    exact path), ``cmp_one`` the exact trichotomy against 1 where
    available, and ``unit_argmax`` a maximizer of a linear functional over
    the unit ball (used by the determinant ascent)."""

    exact: bool = False
    field: str = REAL

    def __init__(self, dim: int):
        self.dim = dim

    def _check(self, v: Sequence) -> None:
        if len(v) != self.dim:
            raise DimensionMismatchError(f"vector length {len(v)} != dim {self.dim}")

    def value(self, v):
        raise NotImplementedError

    def cmp_one(self, v) -> int:
        val = self.value(v)
        if not self.exact:
            raise PreconditionError("exact comparison on a tolerance-based oracle")
        return -1 if val < 1 else (0 if val == 1 else 1)

    def unit_argmax(self, c):
        raise NotImplementedError


class RealLpOracle(NormOracle):
    def __init__(self, dim: int, p: Fraction):
        super().__init__(dim)
        self.p = p
        self.exact = p == INF or p == 1
        self.pf = math.inf if p == INF else float(p)

    def value(self, v):
        self._check(v)
        if self.p == INF:
            return max(abs(Fraction(x)) for x in v) if self.exact else max(abs(x) for x in v)
        if self.p == 1:
            return sum(abs(Fraction(x)) for x in v)
        if self.pf == 2.0:
            return math.sqrt(sum(float(x) * float(x) for x in v))
        return sum(abs(float(x)) ** self.pf for x in v) ** (1.0 / self.pf)

    def unit_argmax(self, c):
        self._check(c)
        if self.p == INF:
            return tuple(Fraction(1) if Fraction(x) >= 0 else Fraction(-1) for x in c)
        if self.p == 1:
            best = max(range(self.dim), key=lambda k: (abs(Fraction(c[k])), -k))
            sign = Fraction(1) if Fraction(c[best]) >= 0 else Fraction(-1)
            return tuple(sign if k == best else Fraction(0) for k in range(self.dim))
        cf = [float(x) for x in c]
        if all(x == 0 for x in cf):
            return tuple(1.0 if k == 0 else 0.0 for k in range(self.dim))
        if self.pf == 2.0:
            nrm = math.sqrt(sum(x * x for x in cf))
            return tuple(x / nrm for x in cf)
        q = self.pf / (self.pf - 1.0)
        mags = [abs(x) ** (q - 1.0) for x in cf]
        cand = [math.copysign(m, x) for m, x in zip(mags, cf)]
        nrm = sum(abs(x) ** self.pf for x in cand) ** (1.0 / self.pf)
        return tuple(x / nrm for x in cand)


class ComplexLpOracle(NormOracle):
    field = COMPLEX

    def __init__(self, dim: int, p: Fraction):
        super().__init__(dim)
        self.p = p
        self.pf = math.inf if p == INF else float(p)

    def value(self, v):
        self._check(v)
        mods = [abs(complex(x)) for x in v]
        if self.p == INF:
            return max(mods)
        if self.pf == 2.0:
            return math.sqrt(sum(m * m for m in mods))
        return sum(m ** self.pf for m in mods) ** (1.0 / self.pf)

    def unit_argmax(self, c):
        # maximize Re(sum c_k x_k) over the ball: phase-align coordinates
        self._check(c)
        phases = []
        mags = []
        for x in c:
            x = complex(x)
            m = abs(x)
            mags.append(m)
            phases.append(x.conjugate() / m if m > 0 else 1.0 + 0j)
        if self.p == INF:
            return tuple(ph for ph in phases)
        if all(m == 0 for m in mags):
            return tuple(1.0 + 0j if k == 0 else 0j for k in range(self.dim))
        if self.pf == 2.0:
            nrm = math.sqrt(sum(m * m for m in mags))
            return tuple(ph * (m / nrm) for ph, m in zip(phases, mags))
        q = self.pf / (self.pf - 1.0)
        radial = [m ** (q - 1.0) for m in mags]
        nrm = sum(r ** self.pf for r in radial) ** (1.0 / self.pf)
        return tuple(ph * (r / nrm) for ph, r in zip(phases, radial))


class FacetsOracle(NormOracle):
    exact = True

    def __init__(self, dim: int, functionals):
        super().__init__(dim)
        self.functionals = [tuple(Fraction(x) for x in f) for f in functionals]

    def value(self, v):
        self._check(v)
        vv = [Fraction(x) for x in v]
        return max(abs(dot(f, vv)) for f in self.functionals)

    def unit_argmax(self, c):
        self._check(c)
        x, _ = facet_ball_argmax(self.functionals, [Fraction(y) for y in c])
        return x


class VerticesOracle(NormOracle):
    exact = True

    def __init__(self, dim: int, points):
        super().__init__(dim)
        self.points = [tuple(Fraction(x) for x in p) for p in points]

    def value(self, v):
        self._check(v)
        return vertices_gauge(self.points, [Fraction(x) for x in v])

    def unit_argmax(self, c):
        self._check(c)
        cc = [Fraction(x) for x in c]
        best = None
        best_val = None
        for p in self.points:
            for sign in (1, -1):
                cand = tuple(sign * x for x in p)
                val = dot(cc, cand)
                if best_val is None or val > best_val or (val == best_val and cand < best):
                    best_val = val
                    best = cand
        return best


class RealifiedOracle(NormOracle):
    """A complex norm read as a norm on R^(2n) through coordinate pairing
    (re_1, im_1, ..., re_n, im_n)."""

    def __init__(self, base: ComplexLpOracle):
        super().__init__(2 * base.dim)
        self.base = base

    def pair(self, v):
        return tuple(complex(float(v[2 * k]), float(v[2 * k + 1]))
                     for k in range(self.base.dim))

    def value(self, v):
        self._check(v)
        return self.base.value(self.pair(v))

    def unit_argmax(self, c):
        self._check(c)
        u = tuple(complex(float(c[2 * k]), float(c[2 * k + 1]))
                  for k in range(self.base.dim))
        z = self.base.unit_argmax(tuple(x.conjugate() for x in u))
        # re-interleave; Re(conj(u) z ... ) matches the real pairing
        out = []
        for x in z:
            out.append(x.real)
            out.append(x.imag)
        return tuple(out)


def oracle_for(spec: NormSpec) -> NormOracle:
    if spec.kind == LP:
        if spec.field == COMPLEX:
            return ComplexLpOracle(spec.dim, spec.p)
        return RealLpOracle(spec.dim, spec.p)
    if spec.kind == FACETS:
        return FacetsOracle(spec.dim, spec.functionals)
    return VerticesOracle(spec.dim, spec.points)


def _dual_p(p: Fraction) -> Fraction:
    if p == INF:
        return Fraction(1)
    if p == 1:
        return INF
    # 1/p + 1/q = 1
    return p / (p - 1)


def dual_oracle_for(spec: NormSpec) -> NormOracle:
    if spec.kind == LP:
        q = _dual_p(spec.p)
        if spec.field == COMPLEX:
            return ComplexLpOracle(spec.dim, q)
        return RealLpOracle(spec.dim, q)
    if spec.kind == FACETS:
        # dual unit ball is the symmetric hull of the facet functionals
        return VerticesOracle(spec.dim, spec.functionals)
    return FacetsOracle(spec.dim, spec.points)


def norm_eval(spec: NormSpec, v: Sequence):
    """The norm of v under the spec (Fraction on the exact path)."""
    return oracle_for(spec).value(v)


def dual_norm_eval(spec: NormSpec, phi: Sequence):
    """The dual norm of the covector phi."""
    return dual_oracle_for(spec).value(phi)


def realified(spec: NormSpec) -> RealifiedOracle:
    if spec.field != COMPLEX or spec.kind != LP:
        raise PreconditionError("realification applies to complex lp specs")
    return RealifiedOracle(ComplexLpOracle(spec.dim, spec.p))
