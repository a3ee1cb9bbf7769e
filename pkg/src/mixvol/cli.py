"""Command-line front end: ``mixvol mv``, ``mixvol mono`` and ``mixvol system``.

Exit codes: 0 success, 1 negative verdict (strict inequality or failed
audit), 2 input error, 3 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .criteria import best_deficit_bound, main3_essential_direction, strict_monotonicity_equal, strict_monotonicity_general
from .errors import CrossCheckError, InputError, MixvolError, PreconditionError
from .mixed import METHODS, mixed_volume, pure_mixed_subdivision
from .systems import analyze_system, failure_linkage, load_system

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CROSSCHECK = 0, 1, 2, 3


def parse_vector(text: str) -> tuple[int, ...]:
    body = re.sub(r"[\s()\[\]]", "", text)
    try:
        return tuple(int(x) for x in body.split(",") if x != "")
    except ValueError:
        raise InputError(f"cannot read an integer vector from {text!r}") from None


def _emit(args, payload: dict, table: str) -> None:
    if args.quiet:
        return
    if args.format == "table":
        print(table)
    else:
        print(io.dumps(payload))


def cmd_mv(args) -> int:
    Ps = io.load_polytope_or_collection(args.collection)
    res = mixed_volume(Ps, args.method, args.seed)
    payload = {
        "normalized_mv": str(Fraction(res.normalized)),
        "mixed_volume": str(res.value),
        "methods": {k: str(Fraction(v)) for k, v in res.methods.items()},
        "agree": res.agree,
        "skipped": res.skipped,
    }
    if args.dump_subdivision:
        sub = pure_mixed_subdivision(Ps, args.seed)
        Path(args.dump_subdivision).write_text(io.dumps(io.subdivision_to_json(sub)) + "\n")
    lines = [f"n!V = {payload['normalized_mv']}", f"V   = {payload['mixed_volume']}"]
    lines += [f"  {k:<13}{v}" for k, v in payload["methods"].items()]
    if res.skipped:
        lines.append(f"  skipped: {', '.join(res.skipped)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_mono(args) -> int:
    Ps = io.load_polytope_or_collection(args.inner)
    if args.equal:
        Q = io.load_polytope_or_collection(args.equal)
        if len(Q) != 1:
            raise InputError("--equal takes a single polytope")
        Q = Q[0]
        verdict = strict_monotonicity_equal(Ps, Q, compare=args.compare, seed=args.seed)
        Qs = [Q] * len(Ps)
    else:
        if not args.outer:
            raise InputError("give an outer collection or --equal Q")
        Qs = io.load_polytope_or_collection(args.outer)
        verdict = strict_monotonicity_general(Ps, Qs, compare=args.compare, seed=args.seed)
    # the truncation criterion must agree with the touch-set verdict
    if main3_essential_direction(Ps, Qs).strict != verdict.strict:
        raise CrossCheckError("criteria disagree")
    payload = verdict.to_json()
    if args.deficit is not None:
        if not args.equal:
            raise InputError("--deficit needs --equal Q")
        bound = best_deficit_bound(Ps, Q, parse_vector(args.deficit))
        payload["deficit"] = bound.to_json() if bound else None
    lines = [f"strict: {verdict.strict}"]
    if verdict.witness:
        lines += [f"  {k}: {v}" for k, v in verdict.witness.items()]
    if verdict.lhs_normalized_mv is not None:
        lines.append(f"n!V(P) = {verdict.lhs_normalized_mv}, n!V(Q) = {verdict.rhs_normalized_mv}")
    if "deficit" in payload:
        d = payload["deficit"]
        lines.append("deficit bound: none certified" if d is None else
                     f"deficit bound: {d['bound']} (actual {d['actual_deficit']})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_NEGATIVE if verdict.strict else EXIT_OK


def cmd_system(args) -> int:
    S = load_system(Path(args.system).read_text())
    report = analyze_system(S, args.seed)
    payload = report.to_json()
    links = []
    for r in report.failing:
        try:
            links.append(failure_linkage(S, r).to_json())
        except PreconditionError:
            pass
    if report.failing:
        payload["linkage"] = links
    _emit(args, payload, report.to_table())
    return EXIT_OK if report.ber_pass else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="lifting seed (default 0)")
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="mixvol", description="Exact mixed volumes and monotonicity audits.")
    p.add_argument("--seed", type=int, default=0, help="lifting seed (default 0)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--quiet", action="store_true", help="print nothing; use the exit code")
    sub = p.add_subparsers(dest="command", required=True)

    mv = sub.add_parser("mv", parents=[common], help="mixed volume of a collection")
    mv.add_argument("collection")
    mv.add_argument("--method", choices=METHODS + ("all",), default="all")
    mv.add_argument("--dump-subdivision", metavar="PATH")
    mv.set_defaults(func=cmd_mv)

    mono = sub.add_parser("mono", parents=[common], help="strict monotonicity verdict")
    mono.add_argument("inner")
    mono.add_argument("outer", nargs="?")
    mono.add_argument("--equal", metavar="Q", help="compare against Vol(Q) for a single polytope Q")
    mono.add_argument("--compare", action="store_true", help="also compute both mixed volumes")
    mono.add_argument("--deficit", metavar="V", help="search lattice-distance deficit bounds for facet normal V")
    mono.set_defaults(func=cmd_mono)

    system = sub.add_parser("system", parents=[common], help="audit a sparse polynomial system")
    system.add_argument("system")
    system.set_defaults(func=cmd_system)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CrossCheckError as exc:
        print(f"mixvol: internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except (MixvolError, OSError) as exc:
        print(f"mixvol: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
