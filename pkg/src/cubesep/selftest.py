"""The acceptance battery: every headline claim checked at desk scale.

Each criterion runs one family of checks and reports expected vs computed
with a pass flag and its runtime.  ``quick`` shrinks the randomized
sample counts for smoke runs; the full battery is what the test suite
and the CLI default execute.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .auerbach import auerbach_basis, standard_auerbach, verify_auerbach
from .config import Config
from .freesets import (
    DIFFERENCE,
    SUM,
    chain_difference_free,
    find_difference_free,
    find_sum_free,
    kottman_value,
    max_free_subset,
    sumfree_value,
    witness_difference,
    witness_sum,
)
from .gaussian import (
    find_gaussian_difference_free,
    gaussian_kottman_value,
    random_gaussian_admissible_set,
)
from .grid import grid_max_properties
from .norms import NormSpec
from .pipeline import (
    complex_separated_points,
    plus_separated_points,
    realified_separated_points,
    separated_points,
)
from .ternary import enumerate_admissible_sets, random_admissible_set

_DEFAULT = Config()


@dataclass
class CriterionResult:
    name: str
    expected: str
    computed: str
    passed: bool
    seconds: float

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class SelfTestReport:
    rows: list[CriterionResult]
    all_passed: bool

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows], "all_passed": self.all_passed}

    def table(self) -> str:
        name_w = max(len("criterion"), max(len(r.name) for r in self.rows))
        exp_w = max(len("expected"), max(len(r.expected) for r in self.rows))
        comp_w = max(len("computed"), max(len(r.computed) for r in self.rows))
        lines = [f"{'criterion':<{name_w}}  {'expected':<{exp_w}}  "
                 f"{'computed':<{comp_w}}  {'time':>8}  status"]
        for r in self.rows:
            status = "PASS" if r.passed else "FAIL"
            lines.append(
                f"{r.name:<{name_w}}  {r.expected:<{exp_w}}  {r.computed:<{comp_w}}  "
                f"{r.seconds:>7.2f}s  {status}"
            )
        return "\n".join(lines)


def _c1_kottman_values(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    got = []
    counts = []
    for l in (2, 3, 4):
        cert = kottman_value(l, config)
        got.append(cert.value)
        counts.append(cert.upper.sets_examined)
    elapsed = time.time() - t0
    ok = got == [1, 2, 3] and counts == [2, 8, 2048] and elapsed < 10.0
    return CriterionResult(
        "1 K(2..4) exhaustive", "values 1,2,3 over 2,8,2048 sets (<10s)",
        f"values {got} over {counts} sets", ok, elapsed)


def _c2_difference_tightness(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    sizes = []
    for l in range(3, 9):
        size, _ = max_free_subset(witness_difference(l), DIFFERENCE, config)
        sizes.append(size)
    elapsed = time.time() - t0
    ok = sizes == [l - 1 for l in range(3, 9)] and elapsed < 60.0
    return CriterionResult(
        "2 difference witness tightness", "max free = l-1 for l=3..8 (<60s)",
        f"sizes {sizes}", ok, elapsed)


_C3_COUNTS = {4: 2500, 5: 2000, 6: 1700, 7: 1300, 8: 1100, 9: 800, 10: 600}


def _c3_difference_property(config: Config, quick: bool, seed: int) -> CriterionResult:
    # the sum finder rides along on the same sampled universes: witnesses
    # of size exactly n, re-verified, at no extra sampling cost
    t0 = time.time()
    rng = random.Random(seed)
    diff_failures = 0
    sum_failures = 0
    exhaustive = 0

    def check(A, n):
        nonlocal diff_failures, sum_failures
        cert = find_difference_free(A, config)
        if cert.claimed_size != n + 1 or not cert.verify():
            diff_failures += 1
        scert = find_sum_free(A, config)
        if scert.claimed_size != n or not scert.verify():
            sum_failures += 1

    for A in enumerate_admissible_sets(3, budget=config.admissible_set_budget):
        exhaustive += 1
        check(A, 3)
    sampled = 0
    for n, count in _C3_COUNTS.items():
        count = max(10, count // 20) if quick else count
        for _ in range(count):
            A = random_admissible_set(n, rng)
            sampled += 1
            check(A, n)
    elapsed = time.time() - t0
    ok = diff_failures == 0 and sum_failures == 0 and exhaustive == 2048
    return CriterionResult(
        "3 difference+sum finder property",
        "0 failures on 2048 + >=1e4 random sets",
        f"{diff_failures}+{sum_failures} failures on {exhaustive} exhaustive "
        f"+ {sampled} random", ok, elapsed)


def _c4_sum_values(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    got = [sumfree_value(l, config).value for l in (1, 2, 3)]
    sizes = []
    for l in range(2, 9):
        size, _ = max_free_subset(witness_sum(l), SUM, config)
        sizes.append(size)
    elapsed = time.time() - t0
    ok = got == [1, 2, 3] and sizes == [l - 1 for l in range(2, 9)]
    return CriterionResult(
        "4 S(1..3) and sum tightness", "values 1,2,3; witness max = l-1 for l=2..8",
        f"values {got}; sizes {sizes}", ok, elapsed)


def _c5_complex_values(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    got = []
    details = []
    for l in range(1, 7):
        cert = gaussian_kottman_value(l, config)
        got.append(cert.value)
        if cert.lower is not None:
            details.append(cert.lower.counterexample["max_free"])
    elapsed = time.time() - t0
    upper6 = gaussian_kottman_value(6, config).upper
    ok = (got == [1, 1, 1, 1, 2, 2] and upper6.sets_examined == 32
          and all(mf < l for mf, l in zip(details, (5, 6))) and elapsed < 60.0)
    return CriterionResult(
        "5 complex values K_C(1..6)", "1,1,1,1,2,2; 32 orbit sets at n=2 (<60s)",
        f"values {got}, lower max-free {details}", ok, elapsed)


_C6_COUNTS = {1: 250, 2: 250, 3: 250, 4: 250}


def _c6_gaussian_property(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    rng = random.Random(seed + 1)
    failures = 0
    sampled = 0
    for n, count in _C6_COUNTS.items():
        count = max(5, count // 20) if quick else count
        for _ in range(count):
            A = random_gaussian_admissible_set(n, rng)
            cert = find_gaussian_difference_free(A, config)
            sampled += 1
            if cert.claimed_size != 2 * n + 2 or not cert.verify():
                failures += 1
    elapsed = time.time() - t0
    ok = failures == 0
    return CriterionResult(
        "6 gaussian finder property", "0 failures, size 2n+2, >=1e3 random sets",
        f"{failures} failures on {sampled} sets", ok, elapsed)


def _c7_chain_property(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    rng = random.Random(seed + 2)
    failures = 0
    sampled = 0
    for N in range(2, 10):
        count = max(5, 125 // 20) if quick else 125
        for _ in range(count):
            A = random_admissible_set(N, rng)
            certs = chain_difference_free(A, config)
            sampled += 1
            if [c.claimed_size for c in certs] != list(range(2, N + 2)):
                failures += 1
                continue
            if not all(c.verify() for c in certs):
                failures += 1
                continue
            for n in range(N - 1):
                lower = {v.key for v in certs[n].witness}
                mask = (1 << (n + 1)) - 1
                upper = {(p & mask, q & mask) for (p, q) in
                         (v.key for v in certs[n + 1].witness)}
                if not lower <= upper:
                    failures += 1
                    break
    elapsed = time.time() - t0
    ok = failures == 0
    return CriterionResult(
        "7 chain coherence property", "0 failures, sizes 2..N+1, >=1e3 chains",
        f"{failures} failures on {sampled} chains", ok, elapsed)


def _c8_grid(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    results = []
    for n in range(1, 6):
        r = grid_max_properties(n)
        results.append((r.max_size, r.size_bound_holds, r.coverage_holds))
    elapsed = time.time() - t0
    # the bound and the double cover hold for every n; the bound is
    # attained from n = 2 on (the 1-grid has no off-diagonal cells)
    ok = all(m <= n and sb and cov
             for n, (m, sb, cov) in enumerate(results, start=1))
    ok = ok and all(m == n for n, (m, _, _) in enumerate(results, start=1) if n >= 2)
    ok = ok and elapsed < 30.0
    return CriterionResult(
        "8 grid star-set bound", "bound n, crossed double cover, n<=5 (<30s)",
        f"max sizes {[r[0] for r in results]}", ok, elapsed)


def _c9_separation(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    problems = []
    dims = (2, 3, 4) if quick else (2, 3, 4, 5, 6, 7, 8)
    specs = [NormSpec.lp(d, 1) for d in dims] + [NormSpec.lp(d, "inf") for d in dims]
    specs.append(NormSpec.facets(2, [["1", "0"], ["0", "1"], ["1", "1"]]))
    specs.append(NormSpec.vertices(3, [["1", "0", "0"], ["0", "1", "0"],
                                       ["0", "0", "1"], ["1", "1", "1"]]))
    for spec in specs:
        fam = separated_points(spec, config, seed)
        if len(fam.points) != spec.dim + 1 or not fam.passed or fam.margin_exact <= 0:
            problems.append(f"diff {spec.to_json()['norm']}")
        gam = plus_separated_points(spec, config, seed)
        if len(gam.points) != spec.dim or not gam.passed:
            problems.append(f"sum {spec.to_json()['norm']}")
    l1_3 = separated_points(NormSpec.lp(3, 1), config, seed)
    if l1_3.margin != 1.0:
        problems.append("l1 d3 margin")
    linf2 = separated_points(NormSpec.lp(2, "inf"), config, seed)
    if linf2.margin != 1.0:
        problems.append("linf d2 margin")
    l2fam = separated_points(NormSpec.lp(3, 2), config, seed)
    if l2fam.margin < config.margin_min:
        problems.append("l2 margin")
    sizes = []
    for n in (1, 2, 3):
        fam = complex_separated_points(NormSpec.lp(n, "inf", "complex"), config, seed)
        sizes.append(len(fam.points))
        if not fam.passed or len(fam.points) != 2 * n + 2:
            problems.append(f"complex d{n}")
    refam = realified_separated_points(NormSpec.lp(2, "inf", "complex"), config, seed)
    if not (sizes[1] == 6 and len(refam.points) == 5):
        problems.append("complex-vs-realified comparison")
    elapsed = time.time() - t0
    ok = not problems
    return CriterionResult(
        "9 separation pipelines", "sizes n+1/n/2n+2, exact margins, 6>5 at n=2",
        "all verified" if ok else "; ".join(problems), ok, elapsed)


def _c10_auerbach(config: Config, quick: bool, seed: int) -> CriterionResult:
    t0 = time.time()
    problems = []
    exact_specs = [
        NormSpec.lp(3, 1), NormSpec.lp(2, "inf"), NormSpec.lp(4, "inf"),
        NormSpec.facets(2, [["1", "0"], ["0", "1"], ["1", "1"]]),
        NormSpec.vertices(3, [["1", "0", "0"], ["0", "1", "0"],
                              ["0", "0", "1"], ["1", "1", "1"]]),
    ]
    float_specs = [NormSpec.lp(3, 2), NormSpec.lp(2, 3),
                   NormSpec.lp(2, "inf", "complex")]
    for spec in exact_specs:
        basis = auerbach_basis(spec, config, seed)
        q = verify_auerbach(basis, spec, config)
        if not (q.exact and q.passed and q.biorth_residual == 0
                and q.primal_residual == 0 and q.dual_residual == 0):
            problems.append(f"exact {spec.to_json()['norm']}")
    for spec in float_specs:
        basis = auerbach_basis(spec, config, seed)
        q = verify_auerbach(basis, spec, config)
        if not (q.passed and max(q.biorth_residual, q.primal_residual,
                                 q.dual_residual) <= config.tau):
            problems.append(f"float {spec.to_json()['norm']}")
    for spec in [NormSpec.lp(d, p) for d in (2, 3) for p in (1, 2, "inf")] + [
            NormSpec.lp(2, "inf", "complex")]:
        q = verify_auerbach(standard_auerbach(spec), spec, config)
        if not q.passed:
            problems.append(f"identity {spec.to_json()['norm']}")
    elapsed = time.time() - t0
    ok = not problems
    return CriterionResult(
        "10 auerbach residuals", "exact: 0; float: <=1e-9; identity passes",
        "all verified" if ok else "; ".join(problems), ok, elapsed)


CRITERIA = [
    _c1_kottman_values,
    _c2_difference_tightness,
    _c3_difference_property,
    _c4_sum_values,
    _c5_complex_values,
    _c6_gaussian_property,
    _c7_chain_property,
    _c8_grid,
    _c9_separation,
    _c10_auerbach,
]


def run_selftest(config: Config = _DEFAULT, quick: bool = False,
                 seed: int | None = None, criteria=None) -> SelfTestReport:
    seed = config.seed if seed is None else seed
    rows = []
    for crit in (CRITERIA if criteria is None else criteria):
        t0 = time.time()
        try:
            rows.append(crit(config, quick, seed))
        except Exception as exc:  # a crashed criterion is a failed criterion
            rows.append(CriterionResult(
                crit.__name__.lstrip("_"), "clean run",
                f"error: {type(exc).__name__}: {exc}", False, time.time() - t0))
    return SelfTestReport(rows, all(r.passed for r in rows))
