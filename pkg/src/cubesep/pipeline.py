"""Separated unit-vector families from Auerbach bases.

The route: enumerate the coefficient vectors with entries in {0,+1,-1}
(or {0,+1,-1,+i,-i}) whose basis combination has norm one, treat them as
a cube set, find a free subset, and pull it back through the basis.  A
nonzero coefficient vector always has norm at least its sup coordinate
(the coefficient map has norm one), which is what turns freeness into a
strict pairwise separation greater than 1.

Sum families ground the freeness test on the coefficient set with the
zero vector added: 0 is never a unit combination, but including it rules
out antipodal witness pairs, whose pulled-back sum would be 0 rather
than long.

Exact specs decide every claim in rational arithmetic with zero
tolerance; float paths carry the membership tolerance and the minimum
margin from the config into the certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .auerbach import AuerbachBasis, auerbach_basis, verify_auerbach
from .config import Config
from .errors import (
    BudgetExceededError,
    PreconditionError,
    SearchDefectError,
)
from .freesets import DIFFERENCE, SUM, find_difference_free, find_sum_free
from .gaussian import GaussianSet, GaussianVector, find_gaussian_difference_free
from .norms import COMPLEX, NormOracle, NormSpec, oracle_for, realified
from .ternary import SymmetricCubeSet, TernaryVector

_DEFAULT = Config()

COMPLEX_MODE = "complex_difference"


@dataclass
class UnitTernarySet:
    """Coefficient vectors whose basis combination has norm one."""

    basis: AuerbachBasis
    cube_set: SymmetricCubeSet
    tau: Optional[float]  # None on the exact path

    def __len__(self) -> int:
        return len(self.cube_set)


@dataclass
class SeparatedFamily:
    mode: str                      # difference | sum | complex_difference
    spec: NormSpec
    realified: bool
    basis: AuerbachBasis
    coefficients: tuple
    points: tuple[tuple, ...]
    pairwise: list[list[float]]
    margin: float
    margin_exact: Optional[Fraction]
    exact: bool
    unit_ok: bool
    passed: bool
    combinatorial: object
    tau: float = _DEFAULT.tau
    margin_min: float = _DEFAULT.margin_min

    def to_json(self) -> dict:
        def enc_scalar(x):
            if isinstance(x, complex):
                return [x.real, x.imag]
            if isinstance(x, float):
                return x
            q = Fraction(x)
            return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)
        doc = {
            "mode": self.mode,
            "spec": self.spec.to_json(),
            "realified": self.realified,
            "basis": self.basis.to_json(),
            "coefficients": [c.serialize() for c in self.coefficients],
            "points": [[enc_scalar(x) for x in p] for p in self.points],
            "pairwise": self.pairwise,
            # a one-point family has no pairs; null instead of IEEE infinity
            "margin": self.margin if self.margin != float("inf") else None,
            "unit_ok": self.unit_ok,
            "passed": self.passed,
            "exact": self.exact,
            "combinatorial": self.combinatorial.to_json(),
        }
        if self.margin_exact is not None:
            q = self.margin_exact
            doc["margin_exact"] = f"{q.numerator}/{q.denominator}"
        if not self.exact:
            doc["tolerances"] = {"tau": self.tau, "margin_min": self.margin_min}
        return doc


@dataclass
class SeparationReport:
    unit_ok: bool
    margin: float
    margin_exact: Optional[Fraction]
    passed: bool
    pairwise: list[list[float]]

    def to_json(self) -> dict:
        out = {
            "unit_ok": self.unit_ok,
            "margin": self.margin if self.margin != float("inf") else None,
            "passed": self.passed,
            "pairwise": self.pairwise,
        }
        if self.margin_exact is not None:
            q = self.margin_exact
            out["margin_exact"] = f"{q.numerator}/{q.denominator}"
        return out


# ---------------------------------------------------------------------------
# coefficient enumeration

def _combine_real(coords: Sequence[int], vectors) -> tuple:
    dim = len(vectors[0])
    point = [0] * dim
    for a, vec in zip(coords, vectors):
        if a == 0:
            continue
        if a == 1:
            for i in range(dim):
                point[i] = point[i] + vec[i]
        else:
            for i in range(dim):
                point[i] = point[i] - vec[i]
    return tuple(point)


def _combine_complex(coeffs: Sequence[complex], vectors) -> tuple:
    dim = len(vectors[0])
    point = [0j] * dim
    for a, vec in zip(coeffs, vectors):
        if a == 0:
            continue
        for i in range(dim):
            point[i] = point[i] + a * vec[i]
    return tuple(point)


def enumerate_unit_ternary(
    basis: AuerbachBasis,
    oracle: NormOracle,
    config: Config = _DEFAULT,
) -> UnitTernarySet:
    """All ternary coefficient vectors whose combination has norm one.

    Exact oracles decide membership with no tolerance; float oracles admit
    |value - 1| <= tau.  The result always contains every +-e_k and is
    symmetric (negation preserves norms), which makes it an admissible
    ground set for the free-subset finders.
    """
    n = len(basis.vectors)
    if n > config.unit_enum_max_dim:
        raise BudgetExceededError(
            f"unit enumeration needs 3**{n}, capped at dimension {config.unit_enum_max_dim}"
        )
    exact = oracle.exact
    members = []
    for coords in itertools.product((1, 0, -1), repeat=n):
        if all(c == 0 for c in coords):
            continue
        point = _combine_real(coords, basis.vectors)
        if exact:
            keep = oracle.cmp_one(point) == 0
        else:
            keep = abs(float(oracle.value(point)) - 1.0) <= config.tau
        if keep:
            members.append(TernaryVector.from_coords(coords))
    cube = SymmetricCubeSet.from_vectors(n, members)
    if not cube.is_admissible():
        raise SearchDefectError(
            "unit coefficient set lost a basis vector or its symmetry"
        )
    return UnitTernarySet(basis, cube, None if exact else config.tau)


def enumerate_unit_gaussian(
    basis: AuerbachBasis, oracle: NormOracle, config: Config = _DEFAULT
) -> GaussianSet:
    """Gaussian coefficient vectors of unit combinations (complex specs)."""
    n = len(basis.vectors)
    if n > config.complex_unit_enum_max_dim:
        raise BudgetExceededError(
            f"Gaussian unit enumeration needs 5**{n}, capped at dimension "
            f"{config.complex_unit_enum_max_dim}"
        )
    members = []
    for coeffs in itertools.product((0, 1, -1, 1j, -1j), repeat=n):
        if all(c == 0 for c in coeffs):
            continue
        point = _combine_complex(coeffs, basis.vectors)
        if abs(float(oracle.value(point)) - 1.0) <= config.tau:
            members.append(GaussianVector.from_coords(coeffs))
    gset = GaussianSet.from_vectors(n, members)
    gset.require_admissible()
    return gset


# ---------------------------------------------------------------------------
# family assembly and verification

def _pairwise_report(
    oracle: NormOracle,
    points: Sequence[tuple],
    mode: str,
    exact: bool,
    config: Config,
) -> SeparationReport:
    m = len(points)

    def combine(a, b):
        if mode == SUM:
            return tuple(x + y for x, y in zip(a, b))
        return tuple(x - y for x, y in zip(a, b))

    unit_ok = True
    for p in points:
        if exact:
            if oracle.cmp_one(p) != 0:
                unit_ok = False
        else:
            if abs(float(oracle.value(p)) - 1.0) > config.tau:
                unit_ok = False

    table = [[0.0] * m for _ in range(m)]
    margin_exact: Optional[Fraction] = Fraction(10 ** 9) if exact else None
    margin = float("inf")
    for k in range(m):
        for l in range(m):
            if k == l:
                val = oracle.value(combine(points[k], points[k])) if mode == SUM else (
                    Fraction(0) if exact else 0.0)
                table[k][l] = float(val)
                continue
            val = oracle.value(combine(points[k], points[l]))
            table[k][l] = float(val)
            if k < l:
                if exact:
                    margin_exact = min(margin_exact, Fraction(val) - 1)
                margin = min(margin, float(val) - 1.0)
    if m < 2:
        margin = float("inf")
        margin_exact = None if not exact else Fraction(10 ** 9)
    if exact:
        passed = unit_ok and (m < 2 or margin_exact > 0)
        return SeparationReport(unit_ok, margin, None if m < 2 else margin_exact,
                                passed, table)
    passed = unit_ok and (m < 2 or margin >= config.margin_min)
    return SeparationReport(unit_ok, margin, None, passed, table)


def _family(
    mode: str,
    spec: NormSpec,
    basis: AuerbachBasis,
    oracle: NormOracle,
    coefficients,
    points,
    cert,
    config: Config,
    realified_flag: bool = False,
) -> SeparatedFamily:
    exact = oracle.exact
    report = _pairwise_report(oracle, points, mode, exact, config)
    family = SeparatedFamily(
        mode=mode,
        spec=spec,
        realified=realified_flag,
        basis=basis,
        coefficients=tuple(coefficients),
        points=tuple(points),
        pairwise=report.pairwise,
        margin=report.margin,
        margin_exact=report.margin_exact,
        exact=exact,
        unit_ok=report.unit_ok,
        passed=report.passed,
        combinatorial=cert,
        tau=config.tau,
        margin_min=config.margin_min,
    )
    if not report.passed:
        raise SearchDefectError(
            f"assembled family failed separation verification (margin {report.margin})"
        )
    return family


def _resolve_basis(
    spec: NormSpec, config: Config, seed: Optional[int], basis: Optional[AuerbachBasis]
) -> AuerbachBasis:
    if basis is None:
        return auerbach_basis(spec, config, seed)
    quality = verify_auerbach(basis, spec, config)
    if not quality.passed:
        raise PreconditionError(
            "supplied basis fails Auerbach verification "
            f"(residuals {quality.biorth_residual}, {quality.primal_residual}, "
            f"{quality.dual_residual})"
        )
    return basis


def separated_points(
    spec: NormSpec, config: Config = _DEFAULT, seed: Optional[int] = None,
    basis: Optional[AuerbachBasis] = None,
) -> SeparatedFamily:
    """dim+1 unit vectors with pairwise difference norms greater than 1."""
    if spec.field == COMPLEX:
        raise PreconditionError("use complex_separated_points for complex specs")
    basis = _resolve_basis(spec, config, seed, basis)
    oracle = oracle_for(spec)
    unit = enumerate_unit_ternary(basis, oracle, config)
    cert = find_difference_free(unit.cube_set, config)
    points = [_combine_real(c.coords, basis.vectors) for c in cert.witness]
    return _family(DIFFERENCE, spec, basis, oracle, cert.witness, points, cert, config)


def plus_separated_points(
    spec: NormSpec, config: Config = _DEFAULT, seed: Optional[int] = None,
    basis: Optional[AuerbachBasis] = None,
) -> SeparatedFamily:
    """dim unit vectors with pairwise sum norms greater than 1."""
    if spec.field == COMPLEX:
        raise PreconditionError("sum families are a real-space construction")
    basis = _resolve_basis(spec, config, seed, basis)
    oracle = oracle_for(spec)
    unit = enumerate_unit_ternary(basis, oracle, config)
    ground = unit.cube_set.with_zero()
    cert = find_sum_free(ground, config)
    if any(c.is_zero() for c in cert.witness):
        raise SearchDefectError("sum witness contains the zero coefficient vector")
    points = [_combine_real(c.coords, basis.vectors) for c in cert.witness]
    return _family(SUM, spec, basis, oracle, cert.witness, points, cert, config)


def complex_separated_points(
    spec: NormSpec, config: Config = _DEFAULT, seed: Optional[int] = None,
    basis: Optional[AuerbachBasis] = None,
) -> SeparatedFamily:
    """2*dim+2 unit vectors of a complex space, coefficients in
    {0,+1,-1,+i,-i}, pairwise difference norms greater than 1."""
    if spec.field != COMPLEX:
        raise PreconditionError("complex family needs a complex spec")
    basis = _resolve_basis(spec, config, seed, basis)
    oracle = oracle_for(spec)
    gset = enumerate_unit_gaussian(basis, oracle, config)
    cert = find_gaussian_difference_free(gset, config)
    points = [_combine_complex(c.coords, basis.vectors) for c in cert.witness]
    return _family(COMPLEX_MODE, spec, basis, oracle, cert.witness, points, cert, config)


# ---------------------------------------------------------------------------
# realified runs (a complex space read as a real space of twice the dimension)

def realify_basis(cbasis: AuerbachBasis) -> tuple[tuple, tuple]:
    """Real vectors (x_k, i x_k interleaved) and real functionals
    (Re x*_k, Im x*_k) forming an Auerbach system of the realified space."""
    vectors = []
    functionals = []
    for x in cbasis.vectors:
        re_im = []
        im_re = []
        for z in x:
            z = complex(z)
            re_im += [z.real, z.imag]
            im_re += [-z.imag, z.real]  # coordinates of i*x
        vectors.append(tuple(re_im))
        vectors.append(tuple(im_re))
    for w in cbasis.functionals:
        u = []
        v = []
        for z in w:
            z = complex(z)
            u += [z.real, -z.imag]   # v -> Re(x*(z))
            v += [z.imag, z.real]    # v -> Im(x*(z))
        functionals.append(tuple(u))
        functionals.append(tuple(v))
    return tuple(vectors), tuple(functionals)


def realified_separated_points(
    spec: NormSpec, config: Config = _DEFAULT, seed: Optional[int] = None
) -> SeparatedFamily:
    """The real pipeline run on the realification of a complex space;
    yields 2*dim+1 points (one fewer than the complex pipeline)."""
    cbasis = auerbach_basis(spec, config, seed)
    oracle = realified(spec)
    vectors, functionals = realify_basis(cbasis)
    rbasis = AuerbachBasis(spec, vectors, functionals, exact=False,
                           det_abs=float(cbasis.det_abs) ** 2)
    # defensive residual check of the realified system
    for a, f in enumerate(functionals):
        for b, x in enumerate(vectors):
            delta = 1.0 if a == b else 0.0
            if abs(sum(p * q for p, q in zip(f, x)) - delta) > config.tau:
                raise SearchDefectError("realified basis lost biorthogonality")
    for x in vectors:
        if abs(float(oracle.value(x)) - 1.0) > config.tau:
            raise SearchDefectError("realified basis vector is not unit")
    unit = enumerate_unit_ternary(rbasis, oracle, config)
    cert = find_difference_free(unit.cube_set, config)
    points = [_combine_real(c.coords, vectors) for c in cert.witness]
    return _family(DIFFERENCE, spec, rbasis, oracle, cert.witness, points, cert,
                   config, realified_flag=True)


def verify_separation(
    family: SeparatedFamily,
    spec: Optional[NormSpec] = None,
    config: Config = _DEFAULT,
) -> SeparationReport:
    """Recompute every unit norm and pairwise norm of a family from its
    coefficients and basis, with the most exact arithmetic the spec
    allows; report-only (no raising on failure)."""
    spec = spec or family.spec
    oracle = realified(spec) if family.realified else oracle_for(spec)
    if family.mode == COMPLEX_MODE:
        points = [_combine_complex(c.coords, family.basis.vectors)
                  for c in family.coefficients]
        mode = DIFFERENCE
    else:
        points = [_combine_real(c.coords, family.basis.vectors)
                  for c in family.coefficients]
        mode = family.mode
    return _pairwise_report(oracle, points, mode, oracle.exact, config)
