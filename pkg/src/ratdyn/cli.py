"""Command-line surface: one subcommand per workbench capability.

Every run writes a single schema-versioned JSON report to stdout (or an
aligned table with --pretty).  Exit codes: 0 success, 1 mathematical negative
for the predicate subcommands (check on a non-dominant system, verify on a
non-invariant, square without a new invariant, selftest failures), 2 for
usage, parse, and file errors.  Reports are deterministic for a fixed input
and seed; only the timing field varies between runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import is_dataclass
from fractions import Fraction
from typing import Tuple

from .dynsys import (DOMINANT, DynamicalSystem, degree_sequence, iterate,
                     validate_dominant)
from .errors import ParseError, RatdynError, SystemFileError
from .exactalg import Polynomial, RationalFunction
from .invsearch import (DEFAULT_BUDGET, SearchBudget, adim_lower_bound,
                        square_gain_check)
from .parsing import parse_expression
from .systemfile import SystemFile, load_system
from .translation import classify_system
from .verify import DEFAULT_SEED, DEFAULT_TRIALS, verify_invariant_report

SCHEMA = "ratdyn-report/1"

_PREDICATES = {"check", "verify", "square", "selftest"}


def _jsonable(value):
    if isinstance(value, (RationalFunction, Polynomial, Fraction)):
        return str(value)
    if isinstance(value, DynamicalSystem):
        return {"variables": list(value.variables),
                "map": [str(c) for c in value.coords]}
    if is_dataclass(value) and not isinstance(value, type):
        return {k: _jsonable(getattr(value, k))
                for k in value.__dataclass_fields__}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def fingerprint(sys: DynamicalSystem) -> str:
    """Hash of the normalized coordinates; stable across formats."""
    canon = ";".join(sys.variables) + "|" + ";".join(str(c) for c in sys.coords)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def _budget_from_string(text: str) -> SearchBudget:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "budget must be four integers: num_deg,den_deg,catalog_depth,rank1_limit")
    try:
        nums = [int(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return SearchBudget(*nums)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratdyn",
        description="exact workbench for rational dynamical systems over Q")
    parser.add_argument("--pretty", action="store_true",
                        help="human-readable table instead of JSON")
    parser.add_argument("--seed", type=int, default=None,
                        help="random seed (default: RATDYN_SEED or a fixed constant)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for the denominator catalog")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # top-level value unless the subcommand position actually sets one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_budget=False):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if name != "selftest":
            p.add_argument("system", help="path to a .system or .json file")
        if needs_budget:
            p.add_argument("--budget", type=_budget_from_string,
                           default=DEFAULT_BUDGET,
                           help="num_deg,den_deg,catalog_depth,rank1_limit "
                                "(default 3,3,2,3)")
        return p

    add("check", "validate the file and test dominance")
    p = add("iterate", "compose the map with itself")
    p.add_argument("--m", type=int, required=True, help="iteration count")
    p = add("degrees", "degree sequence of the iterates")
    p.add_argument("--n", type=int, required=True, help="window length")
    add("invariants", "bounded-degree invariant search", needs_budget=True)
    add("square", "invariant gain of the diagonal square", needs_budget=True)
    add("classify", "translation-structure evidence")
    p = add("verify", "verify a claimed invariant")
    p.add_argument("--function", required=True, help="expression to verify")
    p.add_argument("--mode", choices=["exact", "randomized"], default="exact")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    add("selftest", "run the bundled regression corpus", needs_budget=True)
    return parser


def bundled_systems_dir() -> str:
    return os.path.join(os.path.dirname(__file__), "systems")


def _load(path: str) -> Tuple[SystemFile, DynamicalSystem]:
    sf = load_system(path)
    return sf, sf.build()


def _expectation_checks(sf: SystemFile, budget: SearchBudget, seed: int, jobs: int):
    sysm = sf.build()
    checks = []

    def record(key, expected, actual):
        checks.append({"check": key, "expected": expected,
                       "actual": actual, "pass": expected == actual})

    for key, expected in sorted(sf.expected.items()):
        if key == "dominant":
            record(key, expected, str(validate_dominant(sysm) == DOMINANT).lower())
        elif key == "growth":
            record(key, expected, degree_sequence(sysm, 6).growth_class)
        elif key == "class":
            record(key, expected, classify_system(sysm).recognized_class)
        elif key == "verdict":
            record(key, expected, classify_system(sysm).verdict)
        elif key == "adim_rank":
            record(key, expected,
                   str(adim_lower_bound(sysm, budget, jobs).independence_rank))
        elif key == "square_new":
            report = square_gain_check(sysm, budget, jobs)
            record(key, expected, str(report.new_invariant_found).lower())
        elif key == "invariant":
            f = parse_expression(expected, sysm.variables)
            rep = verify_invariant_report(sysm, f, "exact")
            record(key, expected,
                   expected if rep.verdict == "invariant" else rep.verdict)
        else:
            checks.append({"check": key, "expected": expected,
                           "actual": "unknown expectation key", "pass": False})
    return checks


def run_command(argv) -> Tuple[dict, int]:
    """Execute one subcommand; returns (report document, exit code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("RATDYN_SEED", DEFAULT_SEED))
    started = time.monotonic()
    doc = {"schema": SCHEMA, "command": list(argv), "seed": seed}
    code = 0
    try:
        if args.command == "selftest":
            results = []
            failures = 0
            corpus = sorted(os.listdir(bundled_systems_dir()))
            for entry in corpus:
                if not entry.endswith(".system"):
                    continue
                sf = load_system(os.path.join(bundled_systems_dir(), entry))
                checks = _expectation_checks(sf, args.budget, seed, args.jobs)
                failures += sum(1 for c in checks if not c["pass"])
                results.append({"system": sf.name, "checks": checks})
            doc["result"] = {"kind": "selftest", "systems": results,
                             "passed": failures == 0, "failures": failures}
            doc["budget"] = _jsonable(args.budget)
            code = 0 if failures == 0 else 1
        else:
            sf, sysm = _load(args.system)
            doc["system"] = {"name": sf.name,
                             "variables": list(sysm.variables),
                             "map": [str(c) for c in sysm.coords],
                             "fingerprint": fingerprint(sysm)}
            if args.command == "check":
                verdict = validate_dominant(sysm)
                doc["result"] = {"kind": "check", "dominant": verdict == DOMINANT,
                                 "verdict": verdict, "dimension": sysm.dim}
                code = 0 if verdict == DOMINANT else 1
            elif args.command == "iterate":
                it = iterate(sysm, args.m)
                doc["result"] = {"kind": "iterate", "m": args.m,
                                 "map": [str(c) for c in it.coords],
                                 "degree": it.degree}
            elif args.command == "degrees":
                profile = degree_sequence(sysm, args.n)
                doc["result"] = {"kind": "degrees", **_jsonable(profile)}
            elif args.command == "invariants":
                report = adim_lower_bound(sysm, args.budget, args.jobs)
                doc["budget"] = _jsonable(args.budget)
                doc["result"] = {
                    "kind": "invariants",
                    "invariants": [str(f) for f in report.invariants],
                    "independence_rank": report.independence_rank,
                    "verified": report.verified,
                    "reduction_generators":
                        [str(f) for f in report.reduction_generators],
                }
            elif args.command == "square":
                report = square_gain_check(sysm, args.budget, args.jobs)
                doc["budget"] = _jsonable(args.budget)
                doc["result"] = {
                    "kind": "square",
                    "base_rank": report.base_rank,
                    "square_rank": report.square_rank,
                    "pullback_rank": report.pullback_rank,
                    "new_invariant_found": report.new_invariant_found,
                    "witness": None if report.witness is None else str(report.witness),
                    "degree_profile": _jsonable(report.degree_profile),
                }
                code = 0 if report.new_invariant_found else 1
            elif args.command == "classify":
                ev = classify_system(sysm)
                doc["result"] = {"kind": "classify", **_jsonable(ev)}
            elif args.command == "verify":
                f = parse_expression(args.function, sysm.variables)
                rep = verify_invariant_report(sysm, f, args.mode, args.trials, seed)
                doc["result"] = {"kind": "verify", "function": str(f),
                                 **_jsonable(rep)}
                code = 1 if rep.verdict == "not-invariant" else 0
    except (ParseError, SystemFileError) as exc:
        doc["error"] = {"code": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            doc["error"]["line"] = exc.line
            doc["error"]["column"] = exc.column
        code = 2
    except RatdynError as exc:
        doc["error"] = {"code": type(exc).__name__, "message": str(exc)}
        code = 2
    doc["timing"] = {"ms": round((time.monotonic() - started) * 1000.0, 3)}
    return doc, code


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_pretty(doc: dict) -> str:
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                emit(f"{prefix}{k}.", value[k])
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                lines.append(f"{prefix[:-1]:<32} {value}")
            else:
                for i, v in enumerate(value):
                    emit(f"{prefix}{i}.", v)
        else:
            lines.append(f"{prefix[:-1]:<32} {value}")

    emit("", doc)
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        doc, code = run_command(argv)
    except SystemExit as exc:  # argparse usage errors exit with its own code
        return 2 if exc.code not in (0, None) else 0
    out = render_pretty(doc) if "--pretty" in argv else render_json(doc)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
