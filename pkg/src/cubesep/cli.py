"""Command-line front end.

Every subcommand emits one JSON certificate (stdout or --out) wrapped
with a run manifest and a content digest; ``verify`` re-checks any such
certificate independently.  Exit codes: 0 verified/succeeded, 2
falsified or invalid input, 3 budget exceeded, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import certificates as certs
from .config import Config, load_config
from .errors import (
    BudgetExceededError,
    CubesepError,
    PreconditionError,
    ResearchFlagError,
)
from .freesets import (
    extend_difference_free,
    find_difference_free,
    find_sum_free,
    kottman_value,
    max_free_subset,
    sumfree_value,
    witness_difference,
    witness_sum,
)
from .gaussian import gaussian_kottman_value
from .grid import grid_max_properties
from .norms import NormSpec
from .pipeline import (
    complex_separated_points,
    plus_separated_points,
    realified_separated_points,
    separated_points,
)
from .ternary import SymmetricCubeSet, TernaryVector
from .auerbach import auerbach_basis, verify_auerbach
from .report import write_report
from .selftest import run_selftest
from .verify import verify_certificate

EXIT_OK = 0
EXIT_FALSIFIED = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the certificate to this path instead of stdout")
    common.add_argument("--report", metavar="DIR",
                        help="also render CSV tables and figures into DIR")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: config)")
    common.add_argument("--threads", type=int, default=None,
                        help="parallel workers for exhaustive scans")
    common.add_argument("--budget", type=int, default=None,
                        help="override the dominant budget of this subcommand")
    common.add_argument("--config", default=None, help="JSON config file")

    parser = _Parser(prog="cubesep",
                     description="free-subset certification on the ternary cube and "
                                 "separated families in normed spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kottman", parents=[common],
                       help="certify the difference value K(l) = l-1")
    p.add_argument("l", type=int)

    p = sub.add_parser("sumfree", parents=[common], help="certify the sum value S(l) = l")
    p.add_argument("l", type=int)

    p = sub.add_parser("gaussian", parents=[common],
                       help="certify the complex value K_C(l)")
    p.add_argument("l", type=int)

    p = sub.add_parser("witness", parents=[common],
                       help="emit the canonical tight witness set for l")
    p.add_argument("mode", choices=["diff", "sum"])
    p.add_argument("l", type=int)

    p = sub.add_parser("free", parents=[common],
                       help="find a guaranteed-size free subset of a set file")
    p.add_argument("mode", choices=["diff", "sum"])
    p.add_argument("--set", required=True, dest="set_file")

    p = sub.add_parser("extend", parents=[common],
                       help="extend a difference-free witness by one coordinate")
    p.add_argument("--set", required=True, dest="set_file")
    p.add_argument("--base", required=True, dest="base_file")

    p = sub.add_parser("grid", parents=[common],
                       help="exhaustive star-set bound on the n-grid")
    p.add_argument("n", type=int)

    p = sub.add_parser("auerbach", parents=[common],
                       help="compute and verify an Auerbach basis for a norm file")
    p.add_argument("--norm", required=True, dest="norm_file")

    p = sub.add_parser("separate", parents=[common],
                       help="produce a separated unit-vector family for a norm file")
    p.add_argument("mode", choices=["diff", "sum", "complex"])
    p.add_argument("--norm", required=True, dest="norm_file")
    p.add_argument("--realify", action="store_true",
                   help="run the real pipeline on the realification of a complex spec")

    p = sub.add_parser("verify", parents=[common],
                       help="independently re-check a certificate file")
    p.add_argument("certificate")

    p = sub.add_parser("report", parents=[common],
                       help="render the report files for a certificate")
    p.add_argument("certificate")
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the acceptance battery and print the claims table")
    p.add_argument("--quick", action="store_true", help="reduced sample counts")

    return parser


_BUDGET_TARGET = {
    "kottman": "admissible_set_budget",
    "sumfree": "admissible_set_budget",
    "gaussian": "admissible_set_budget",
    "free": "mis_vertex_budget",
    "extend": "extension_assignment_budget",
    "witness": "mis_vertex_budget",
    "separate": "unit_enum_max_dim",
    "auerbach": "auerbach_vertex_tuple_budget",
}


def _load_config(args) -> Config:
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.budget is not None and args.command in _BUDGET_TARGET:
        overrides[_BUDGET_TARGET[args.command]] = args.budget
    return load_config(args.config, **overrides)


def _read_set(path: str) -> SymmetricCubeSet:
    with open(path, "r", encoding="utf-8") as fh:
        return SymmetricCubeSet.from_json(json.load(fh))


def _emit(kind: str, payload: dict, args, config: Config, t0: float) -> dict:
    manifest = certs.make_manifest(
        command=list(args.argv),
        config=config,
        seed=config.seed,
        wall_time_s=round(time.time() - t0, 6),
    )
    doc = certs.wrap(kind, payload, manifest)
    certs.dump(doc, args.out)
    if args.report:
        write_report(doc, args.report)
    return doc


def _run(args) -> int:
    config = _load_config(args)
    t0 = time.time()
    cmd = args.command

    if cmd == "kottman":
        cert = kottman_value(args.l, config, seed=config.seed)
        _emit(certs.KIND_VALUE, cert.to_json(), args, config, t0)
        return EXIT_OK
    if cmd == "sumfree":
        cert = sumfree_value(args.l, config, seed=config.seed)
        _emit(certs.KIND_VALUE, cert.to_json(), args, config, t0)
        return EXIT_OK
    if cmd == "gaussian":
        cert = gaussian_kottman_value(args.l, config, seed=config.seed)
        _emit(certs.KIND_VALUE, cert.to_json(), args, config, t0)
        return EXIT_OK
    if cmd == "witness":
        if args.mode == "diff":
            A = witness_difference(args.l)
            mode = "difference"
        else:
            A = witness_sum(args.l)
            mode = "sum"
        size, _ = max_free_subset(A, mode, config)
        payload = {"mode": mode, "l": args.l, "set": A.to_json(),
                   "expected_max_free": args.l - 1, "computed_max_free": size}
        if size != args.l - 1:
            raise ResearchFlagError("witness set is not tight", artifact=payload)
        _emit(certs.KIND_WITNESS_SET, payload, args, config, t0)
        return EXIT_OK
    if cmd == "free":
        A = _read_set(args.set_file)
        cert = (find_difference_free(A, config) if args.mode == "diff"
                else find_sum_free(A, config))
        _emit(certs.KIND_FREE_SET, cert.to_json(), args, config, t0)
        return EXIT_OK
    if cmd == "extend":
        A = _read_set(args.set_file)
        base_doc = json.load(open(args.base_file, "r", encoding="utf-8"))
        base = [TernaryVector.from_string(s) for s in base_doc["members"]]
        cert = extend_difference_free(A, base, config)
        payload = {
            "ground_set": A.to_json(),
            "base": sorted(v.serialize() for v in base),
            "witness": sorted(v.serialize() for v in cert.witness),
            "claimed_size": cert.claimed_size,
        }
        _emit(certs.KIND_EXTENSION, payload, args, config, t0)
        return EXIT_OK
    if cmd == "grid":
        budget = args.budget if args.budget is not None else 5
        report = grid_max_properties(args.n, budget=budget)
        _emit(certs.KIND_GRID, report.to_json(), args, config, t0)
        return EXIT_OK
    if cmd == "auerbach":
        spec = NormSpec.load(args.norm_file)
        basis = auerbach_basis(spec, config, seed=config.seed)
        quality = verify_auerbach(basis, spec, config)
        payload = {"basis": basis.to_json(), "quality": quality.to_json()}
        _emit(certs.KIND_AUERBACH, payload, args, config, t0)
        return EXIT_OK if quality.passed else EXIT_FALSIFIED
    if cmd == "separate":
        spec = NormSpec.load(args.norm_file)
        if args.mode == "complex":
            family = complex_separated_points(spec, config, seed=config.seed)
        elif args.realify:
            family = realified_separated_points(spec, config, seed=config.seed)
        elif args.mode == "diff":
            family = separated_points(spec, config, seed=config.seed)
        else:
            family = plus_separated_points(spec, config, seed=config.seed)
        _emit(certs.KIND_FAMILY, family.to_json(), args, config, t0)
        return EXIT_OK
    if cmd == "verify":
        doc = certs.load(args.certificate)
        result = verify_certificate(doc, config)
        print(json.dumps({"ok": result.ok, "kind": result.kind,
                          "detail": result.detail}, sort_keys=True))
        return EXIT_OK if result.ok else EXIT_FALSIFIED
    if cmd == "report":
        doc = certs.load(args.certificate)
        for path in write_report(doc, args.out_dir):
            print(path)
        return EXIT_OK
    if cmd == "selftest":
        report = run_selftest(config, quick=args.quick, seed=config.seed)
        print(report.table())
        manifest = certs.make_manifest(list(args.argv), config, config.seed,
                                       round(time.time() - t0, 6))
        doc = certs.wrap(certs.KIND_SELFTEST, report.to_json(), manifest)
        if args.out:
            certs.dump(doc, args.out)
        if args.report:
            write_report(doc, args.report)
        return EXIT_OK if report.all_passed else EXIT_FALSIFIED
    raise PreconditionError(f"unhandled command {cmd!r}")


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.argv = argv
    try:
        return _run(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CubesepError, ValueError, KeyError, TypeError) as exc:
        # invalid or malformed input (including unreadable JSON files)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
