"""Independent re-verification of emitted certificates.

Search found the objects; this module re-checks the claims from the raw
serialized data with deliberately simple code: coordinate tuples, direct
pair loops and a plain choose-or-skip recursion for existence bounds.
Nothing here calls the chain constructions or the branch-and-bound
oracle, so a bug in the search cannot vouch for itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .certificates import digest_ok
from .config import Config
from .errors import CubesepError

_DEFAULT = Config()

_TERNARY = {"+": 1, "-": -1, "0": 0}
_GAUSS = {"+": 1 + 0j, "-": -1 + 0j, "0": 0j, "i": 1j, "j": -1j}


def _coords(s: str) -> tuple[int, ...]:
    return tuple(_TERNARY[ch] for ch in s)


def _gcoords(s: str) -> tuple[complex, ...]:
    return tuple(_GAUSS[ch] for ch in s)


@dataclass
class VerifyResult:
    ok: bool
    kind: str
    detail: str

    def __bool__(self) -> bool:
        return self.ok


class _Fail(CubesepError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise _Fail(message)


# ---------------------------------------------------------------------------
# elementary set facts on coordinate tuples

def _neg(v):
    return tuple(-c for c in v)


def _diff(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _sum(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _admissible(members: set, dim: int, complex_field: bool) -> bool:
    for k in range(dim):
        e = tuple((1 + 0j if complex_field else 1) if i == k else (0j if complex_field else 0)
                  for i in range(dim))
        if e not in members:
            return False
    if complex_field:
        return all(tuple(1j * c for c in v) in members for v in members)
    return all(_neg(v) in members for v in members)


def _pair_conflict(x, y, members: set, mode: str) -> bool:
    if mode == "sum":
        return _sum(x, y) in members
    return _diff(x, y) in members or _diff(y, x) in members


def _is_free(witness: Sequence, members: set, mode: str) -> bool:
    for i, x in enumerate(witness):
        for y in witness[i + 1:]:
            if x == y or _pair_conflict(x, y, members, mode):
                return False
    return True


def _exists_free(members_sorted: list, member_set: set, mode: str, size: int) -> bool:
    """Plain choose-or-skip recursion in serialization order."""
    if size <= 0:
        return True
    n = len(members_sorted)

    def rec(start: int, chosen: list) -> bool:
        need = size - len(chosen)
        if need == 0:
            return True
        for i in range(start, n - need + 1):
            v = members_sorted[i]
            if all(not _pair_conflict(v, c, member_set, mode) for c in chosen):
                chosen.append(v)
                if rec(i + 1, chosen):
                    return True
                chosen.pop()
        return False

    return rec(0, [])


def _max_free_is(members_sorted, member_set, mode, claimed: int) -> None:
    _require(_exists_free(members_sorted, member_set, mode, claimed),
             f"no free subset of the claimed maximum size {claimed}")
    _require(not _exists_free(members_sorted, member_set, mode, claimed + 1),
             f"a free subset larger than the claimed maximum {claimed} exists")


def _parse_set(doc: dict, complex_field: bool):
    dim = int(doc["dim"])
    parse = _gcoords if complex_field else _coords
    members = [parse(s) for s in doc["members"]]
    _require(len(set(members)) == len(members), "duplicate set members")
    _require(all(len(v) == dim for v in members), "member length differs from dim")
    return dim, sorted(doc["members"]), members


# ---------------------------------------------------------------------------
# per-kind payload checks

def _verify_free_set(payload: dict, complex_field: bool) -> None:
    mode = "difference" if complex_field else payload["mode"]
    dim, _, members = _parse_set(payload["ground_set"], complex_field)
    member_set = set(members)
    parse = _gcoords if complex_field else _coords
    witness = [parse(s) for s in payload["witness"]]
    _require(len(witness) == payload["claimed_size"], "witness size differs from claim")
    _require(len(set(witness)) == len(witness), "witness has duplicates")
    _require(all(w in member_set for w in witness), "witness leaves the ground set")
    _require(_is_free(witness, member_set, mode), "witness is not free")
    if mode == "sum" and "self_sums_clear" in payload:
        strict = all(_sum(w, w) not in member_set for w in witness)
        _require(strict == payload["self_sums_clear"],
                 "self-sum flag differs from the recomputation")


def _verify_counterexample(counter: dict, l: int, relation: str) -> None:
    complex_field = relation == "complex_difference"
    mode = "sum" if relation == "real_sum" else "difference"
    dim, member_strings, members = _parse_set(counter, complex_field)
    member_set = set(members)
    _require(_admissible(member_set, dim, complex_field),
             "counterexample violates condition (a) or (b)")
    claimed = counter["max_free"]
    ordered = [(_gcoords if complex_field else _coords)(s) for s in member_strings]
    if counter.get("exact", False):
        _max_free_is(ordered, member_set, mode, claimed)
    _require(claimed < l, "counterexample max_free does not refute the arrow")


def _relation_spaces(relation: str):
    if relation == "complex_difference":
        from .gaussian import enumerate_gaussian_admissible_sets
        return enumerate_gaussian_admissible_sets, True, "difference"
    from .ternary import enumerate_admissible_sets
    mode = "sum" if relation == "real_sum" else "difference"
    return enumerate_admissible_sets, False, mode


def _verify_arrow(payload: dict, config: Config) -> None:
    relation = payload["relation"]
    N, l = payload["N"], payload["l"]
    method = payload["method"]
    holds = payload["holds"]
    if method == "exhaustive":
        enumerate_sets, complex_field, mode = _relation_spaces(relation)
        examined = 0
        failure = None
        for A in enumerate_sets(N, budget=config.admissible_set_budget):
            examined += 1
            strings = A.member_strings()
            members = [(_gcoords if complex_field else _coords)(s) for s in strings]
            if not _exists_free(members, set(members), mode, l):
                failure = examined
                break
        if holds:
            _require(failure is None, "re-enumeration found a counterexample")
            _require(examined == payload["sets_examined"],
                     "sets_examined differs from the re-enumeration")
        else:
            _require(failure is not None, "re-enumeration found no counterexample")
            _require(failure == payload["sets_examined"],
                     "counterexample position differs from the certificate")
            _verify_counterexample(payload["counterexample"], l, relation)
        return
    if method == "witness":
        _require(not holds, "witness method can only refute an arrow")
        _verify_counterexample(payload["counterexample"], l, relation)
        return
    if method == "theorem_backed":
        if relation == "real_difference":
            expected = l <= N + 1
        elif relation == "real_sum":
            expected = l <= N
        else:
            expected = l <= 2 * N + 2
        _require(holds == expected, "theorem-backed claim contradicts the closed form")
        if not holds:
            _verify_counterexample(payload["counterexample"], l, relation)
        return
    raise _Fail(f"unknown method {method!r}")


def _verify_value(payload: dict, config: Config) -> None:
    function = payload["function"]
    l, value = payload["l"], payload["value"]
    expected = {"kottman": l - 1, "sumfree": l, "gaussian_kottman": max(1, (l - 1) // 2)}
    _require(function in expected, f"unknown value function {function!r}")
    _require(value == expected[function], "value differs from the closed form")
    upper = payload["upper"]
    _require(upper["holds"] and upper["N"] == value and upper["l"] == l,
             "upper certificate does not certify the value")
    _verify_arrow(upper, config)
    lower = payload.get("lower")
    if value > 1:
        _require(lower is not None, "missing lower certificate above the floor dimension")
    if lower is not None:
        _require((not lower["holds"]) and lower["N"] == value - 1 and lower["l"] == l,
                 "lower certificate does not refute the previous dimension")
        _verify_arrow(lower, config)


def _verify_witness_set(payload: dict) -> None:
    mode = payload["mode"]
    dim, member_strings, members = _parse_set(payload["set"], False)
    member_set = set(members)
    _require(_admissible(member_set, dim, False), "witness set is not admissible")
    ordered = [_coords(s) for s in member_strings]
    _max_free_is(ordered, member_set, mode, payload["expected_max_free"])


def _verify_extension(payload: dict) -> None:
    dim, _, members = _parse_set(payload["ground_set"], False)
    member_set = set(members)
    base = [_coords(s) for s in payload["base"]]
    out = [_coords(s) for s in payload["witness"]]
    _require(len(out) == len(base) + 1, "extension did not add exactly one element")
    _require(all(w in member_set for w in out), "extension leaves the ground set")
    _require(_is_free(out, member_set, "difference"), "extension is not difference-free")
    prefixes = {v[:dim - 1] for v in out}
    _require(all(b in prefixes for b in base), "some base element has no extension")


def _verify_chain(payload: dict) -> None:
    dim, _, members = _parse_set(payload["ground_set"], False)
    stages = payload["stages"]
    _require(len(stages) == dim, "chain length differs from the dimension")
    full = members
    for n, stage in enumerate(stages, start=1):
        proj = {v[:n] for v in full}
        witness = [_coords(s) for s in stage]
        _require(len(witness) == n + 1, f"stage {n} has wrong size")
        _require(all(w in proj for w in witness), f"stage {n} leaves the projection")
        _require(_is_free(witness, proj, "difference"), f"stage {n} is not free")
        if n > 1:
            prev = {_coords(s) for s in stages[n - 2]}
            now_proj = {w[:n - 1] for w in witness}
            _require(prev <= now_proj, f"stage {n} does not extend stage {n - 1}")


def _verify_grid(payload: dict) -> None:
    import itertools
    n = payload["n"]
    witness = [tuple(p) for p in payload["witness"]]
    _require(payload["max_size"] == n and payload["size_bound_holds"]
             and payload["coverage_holds"], "grid report flags are not all positive")
    _require(len(witness) == n, "witness size differs from the maximum")

    def ok(x, y):
        shared = set(x) & set(y)
        return all((x[0] == k) != (y[0] == k) for k in shared)

    for i, x in enumerate(witness):
        _require(1 <= x[0] <= n and 1 <= x[1] <= n and x[0] != x[1],
                 "witness point outside the off-diagonal grid")
        for y in witness[i + 1:]:
            _require(ok(x, y), "witness violates the crossing condition")
    cells = [(k, m) for k in range(1, n + 1) for m in range(1, n + 1) if k != m]
    for sub in itertools.combinations(cells, n + 1):
        good = all(ok(x, y) for i, x in enumerate(sub) for y in sub[i + 1:])
        _require(not good, "a star set larger than n exists")


def _verify_auerbach_payload(payload: dict, config: Config) -> None:
    from .auerbach import AuerbachBasis, verify_auerbach
    basis = AuerbachBasis.from_json(payload["basis"])
    quality = verify_auerbach(basis, basis.spec, config)
    _require(quality.passed, "basis fails the residual checks")
    claimed = payload["quality"]
    _require(abs(quality.biorth_residual - claimed["biorth_residual"]) <= 1e-12
             and abs(quality.primal_residual - claimed["primal_residual"]) <= 1e-12
             and abs(quality.dual_residual - claimed["dual_residual"]) <= 1e-12,
             "recomputed residuals differ from the certificate")


def _verify_family(payload: dict, config: Config) -> None:
    from .auerbach import AuerbachBasis
    from .norms import NormSpec, oracle_for, realified
    from .pipeline import (
        SeparatedFamily,
        enumerate_unit_gaussian,
        enumerate_unit_ternary,
        verify_separation,
    )
    from .gaussian import GaussianVector
    from .ternary import TernaryVector

    spec = NormSpec.from_json(payload["spec"])
    basis = AuerbachBasis.from_json(payload["basis"])
    realified_flag = payload.get("realified", False)
    mode = payload["mode"]
    complex_mode = mode == "complex_difference"
    parse = (GaussianVector.from_string if complex_mode else TernaryVector.from_string)
    coefficients = tuple(parse(s) for s in payload["coefficients"])

    n = len(basis.vectors)
    expected_size = {"difference": n + 1, "sum": n,
                     "complex_difference": 2 * n + 2}[mode]
    _require(len(coefficients) == expected_size, "family size differs from the contract")

    family = SeparatedFamily(
        mode=mode, spec=spec, realified=realified_flag, basis=basis,
        coefficients=coefficients, points=(), pairwise=[], margin=0.0,
        margin_exact=None, exact=payload["exact"], unit_ok=True, passed=True,
        combinatorial=None,
    )
    report = verify_separation(family, spec, config)
    _require(report.unit_ok, "a recomputed point is not unit")
    _require(report.passed, "recomputed margin does not certify separation")
    claimed_margin = payload["margin"]
    if claimed_margin is None:
        _require(len(coefficients) < 2, "missing margin on a multi-point family")
    else:
        _require(abs(report.margin - claimed_margin) <= 1e-9 * max(1.0, abs(report.margin)),
                 "recomputed margin differs from the certificate")

    comb = payload["combinatorial"]
    ground = comb["ground_set"]
    _verify_free_set(comb, complex_field=complex_mode)
    # the embedded ground set must be exactly the unit coefficient set
    oracle = realified(spec) if realified_flag else oracle_for(spec)
    if complex_mode:
        fresh = enumerate_unit_gaussian(basis, oracle, config).member_strings()
    else:
        fresh = enumerate_unit_ternary(basis, oracle, config).cube_set.member_strings()
        if mode == "sum":
            fresh = sorted(fresh + ["0" * n])
    _require(fresh == ground["members"], "embedded ground set differs from re-enumeration")


def _verify_selftest(payload: dict) -> None:
    rows = payload["rows"]
    _require(bool(rows), "empty selftest table")
    for row in rows:
        _require(row["passed"], f"selftest row failed: {row['name']}")
    _require(payload["all_passed"], "selftest table contradicts the summary flag")


def verify_certificate(doc: dict, config: Config = _DEFAULT) -> VerifyResult:
    kind = doc.get("kind", "?")
    try:
        _require(set(doc) >= {"kind", "payload", "manifest", "digest"},
                 "document is not a certificate envelope")
        _require(digest_ok(doc), "digest mismatch (content was altered)")
        payload = doc["payload"]
        if kind == "free_set":
            _verify_free_set(payload, complex_field=False)
        elif kind == "gaussian_free_set":
            _verify_free_set(payload, complex_field=True)
        elif kind == "arrow":
            _verify_arrow(payload, config)
        elif kind == "value":
            _verify_value(payload, config)
        elif kind == "witness_set":
            _verify_witness_set(payload)
        elif kind == "extension":
            _verify_extension(payload)
        elif kind == "chain":
            _verify_chain(payload)
        elif kind == "grid_report":
            _verify_grid(payload)
        elif kind == "auerbach":
            _verify_auerbach_payload(payload, config)
        elif kind == "separated_family":
            _verify_family(payload, config)
        elif kind == "selftest_report":
            _verify_selftest(payload)
        else:
            raise _Fail(f"unknown certificate kind {kind!r}")
    except _Fail as exc:
        return VerifyResult(False, kind, str(exc))
    except (KeyError, TypeError, ValueError, IndexError, AttributeError,
            CubesepError) as exc:
        # a document the checks cannot even read is falsified, not a crash
        return VerifyResult(False, kind, f"malformed certificate: {type(exc).__name__}: {exc}")
    return VerifyResult(True, kind, "verified")
