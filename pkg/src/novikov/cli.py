"""Command-line front end.

Exit codes: 0 pass, 1 mathematical failure, 2 input error,
3 hypothesis not satisfied (characteristic 2 for a char-flagged identity).
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import is_novikov
from .constructions import CONSTRUCTIONS, ConstructionError, build
from .identities import (
    EnumerationGuardError,
    HypothesisViolation,
    IdentityError,
    check_identity,
    get_identity,
    parse_identity,
)
from .io import DefinitionError, dumps_definition, read_definition
from .scalar import FieldError, make_field
from .series import classify
from .suite import CHECK_IDS, DEFAULT_SEED, build_item, default_corpus, explore_char2, run_corpus

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _field_arg(args):
    if args.field in ("Fp", "fp", "F_p") or args.p is not None:
        if args.p is None:
            raise FieldError("--field Fp needs --p")
        return make_field({"kind": "prime-field", "p": args.p})
    return make_field(args.field)


def cmd_construct(args) -> int:
    if args.d is not None and args.d < 1:
        print(f"error: --d must be >= 1, got {args.d}", file=sys.stderr)
        return EXIT_INPUT
    try:
        A = build(args.name, d=args.d, field=_field_arg(args), seed=args.seed)
    except (ConstructionError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps_definition(A)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        if args.seed is not None:
            print(f"seed {args.seed}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def _witness_dict(A, v) -> dict:
    return {
        "holds": v.holds,
        "reason": v.reason,
        "witness": None if v.holds else [A.labels[i] for i in v.witness],
        "value": None if v.holds else str(v.value),
    }


def cmd_validate(args) -> int:
    A = read_definition(args.path)
    v = is_novikov(A, workers=args.workers)
    if args.json:
        _emit(_witness_dict(A, v))
    else:
        print(f"Novikov: {v.describe(A.labels)}")
    return EXIT_PASS if v.holds else EXIT_FAIL


def _print_series(name: str, s) -> None:
    start = s.start
    steps = ", ".join(f"{start + n}:{d}" for n, d in enumerate(s.dims))
    tail = f"zero from {s.index}" if s.terminated else "stabilizes at a nonzero subspace"
    print(f"  {name:<28} dims [{steps}]  {tail}")


def cmd_report(args) -> int:
    A = read_definition(args.path)
    v = is_novikov(A, workers=args.workers)
    if not v.holds:
        msg = f"not a Novikov algebra: {v.describe(A.labels)}"
        if args.json:
            _emit({"error": msg, **_witness_dict(A, v)})
        else:
            print(msg)
        return EXIT_FAIL
    r = classify(A)
    if args.json:
        _emit(r.to_dict())
        return EXIT_PASS
    print(f"dim {A.dim} over {A.field}")
    _print_series("powers N^m", r.power)
    _print_series("right powers N^[m]", r.right_power)
    _print_series("derived powers N^(m)", r.derived)
    _print_series("Lie derived series", r.lie_derived)
    _print_series("powers of N^2", r.square_power)
    _print_series("right powers of [N,N] ideal", r.commutator_ideal_right_power)
    flags = [
        ("nilpotent", r.nilpotent, r.power.index),
        ("right nilpotent", r.right_nilpotent, r.right_power.index),
        ("solvable", r.solvable, r.derived.index),
        ("Lie-solvable", r.lie_solvable, r.lie_derived.index),
        ("[N,N] right nilpotent", r.commutator_ideal_right_nilpotent, r.commutator_ideal_right_power.index),
    ]
    for name, flag, idx in flags:
        print(f"  {name:<22} {'yes' if flag else 'no'}" + (f" (index {idx})" if flag else ""))
    if not r.solvability_consistent:
        print("  INTERNAL ERROR: solvable / right nilpotent / N^2 nilpotent disagree")
        return EXIT_FAIL
    return EXIT_PASS


def cmd_identity(args) -> int:
    A = read_definition(args.path)
    ident = get_identity(args.id) if args.id else parse_identity(args.expr)
    try:
        v = check_identity(A, ident, workers=args.workers, force=args.force)
    except HypothesisViolation as exc:
        if args.json:
            _emit({"identity": ident.name, "status": "hypothesis-not-satisfied", "detail": str(exc)})
        else:
            print(f"{ident.name}: hypothesis not satisfied ({exc})")
        return EXIT_HYPOTHESIS
    status = "pass" if v.holds else "fail"
    if args.json:
        _emit({"identity": ident.name, "status": status, **_witness_dict(A, v)})
    else:
        print(f"{ident.name}: {status}" + ("" if v.holds else f" at ({', '.join(A.labels[i] for i in v.witness)}): {v.value}"))
    return EXIT_PASS if v.holds else EXIT_FAIL


def _print_suite(label: str, suite) -> None:
    print(label)
    for cid in CHECK_IDS:
        c = suite.checks[cid]
        print(f"  {cid:<4} {c.status:<25} {c.detail}")


def cmd_theorems(args) -> int:
    if args.char2_explore:
        _emit(explore_char2(seed=args.seed if args.seed is not None else DEFAULT_SEED))
        return EXIT_PASS
    if args.path:
        specs = [{"path": args.path, "name": "file"}]
        seed = None
    elif args.corpus == "default":
        seed = args.seed if args.seed is not None else DEFAULT_SEED
        specs = default_corpus(seed)
    else:
        print("error: give a definition file or --corpus default", file=sys.stderr)
        return EXIT_INPUT
    if args.path:
        A = build_item(specs[0])
        v = is_novikov(A, workers=args.workers)
        if not v.holds:
            print(f"not a Novikov algebra: {v.describe(A.labels)}")
            return EXIT_FAIL
    report = run_corpus(specs, seed=seed, workers=args.workers, force=args.force)
    if args.json:
        _emit(report.to_dict())
        return report.exit_code
    if seed is not None:
        print(f"seed {seed}")
    for item in report.items:
        if args.path or item.status != "ok" or args.verbose:
            if item.suite is not None:
                _print_suite(f"{item.label}: {item.status}", item.suite)
            else:
                print(f"{item.label}: {item.status}: {item.error}")
    if not args.path:
        counts = report.counts()
        print(f"{'check':<6}{'pass':>6}{'fail':>6}{'hyp':>6}{'n/a':>6}")
        for cid in CHECK_IDS:
            c = counts[cid]
            print(f"{cid:<6}{c['pass']:>6}{c['fail']:>6}{c['hypothesis-not-satisfied']:>6}{c['not-applicable']:>6}")
        t = report.metabelian_bounds()
        print(
            f"Lie-metabelian instances: {t['instances']}; max index of (N,N,N) powers {t['max_associator_power_index']}, "
            f"of [N,N] powers {t['max_commutator_power_index']}"
        )
        print(f"{len(report.items)} instances, {report.failures} failures")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="novikov", description="Exact computations with finite-dimensional Novikov algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write the definition file of a standard algebra")
    p.add_argument("name", choices=CONSTRUCTIONS)
    p.add_argument("--d", type=int)
    p.add_argument("--field", default="Q", help="Q, Fp (with --p), or F<p>")
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int, help="random derivation for gelfand-dorfman")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    def common(p, json_flag=True):
        p.add_argument("--workers", type=int, default=1)
        if json_flag:
            p.add_argument("--json", action="store_true")

    p = sub.add_parser("validate", help="check the Novikov identities")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="power, right-power, derived and Lie-derived series")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("identity", help="check a catalog identity or an expression")
    p.add_argument("path")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--id")
    g.add_argument("--expr")
    p.add_argument("--force", action="store_true", help="lift the n <= 8 guard for 7-variable identities")
    common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("theorems", help="run the theorem checks on a file or the default corpus")
    p.add_argument("path", nargs="?")
    p.add_argument("--corpus", choices=["default"])
    p.add_argument("--seed", type=int)
    p.add_argument("--force", action="store_true")
    p.add_argument("--verbose", "-v", action="store_true")
    p.add_argument("--char2-explore", action="store_true")
    common(p)
    p.set_defaults(func=cmd_theorems)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DefinitionError, IdentityError, FieldError, EnumerationGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
