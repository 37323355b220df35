"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 violated mathematical precondition,
3 internal invariant violation or failed selftest.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from ._parse import ParseError
from .actions import action_tables, partition_elliptic, transitivity_report
from .classtower import build_class_tower, check_two_torsion_iso
from .coordring import CoordRing
from .curve import WeierstrassCurve, parse_point
from .errors import EnumerationCapExceeded, InvariantViolation, MathPreconditionError
from .gf import base_field, parse_element
from .normlab import construct_normalizer, cremona_check, parse_matrix
from .polyf import monic_irreducibles_up_to
from .quotgraph import (build_elliptic_skeleton, build_nagao_ray, build_rational_line, emit,
                        induced_automorphism, line_involution)
from .ratring import RatRingSpec, g0_matrix, parse_rat_matrix, rat_cremona_check
from .selftest import run_selftest

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field(q: int):
    try:
        return base_field(q)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--q {q}: {exc}") from None


def parse_curve(field, text: str) -> WeierstrassCurve:
    """``"a=-3,b=0"`` or long form ``"a1=..,a2=..,a3=..,a4=..,a6=.."``."""
    vals = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"cannot parse curve coefficient {part!r}")
        k, v = part.split("=", 1)
        vals[k.strip()] = parse_element(field, v)
    short, long_ = {"a", "b"}, {"a1", "a2", "a3", "a4", "a6"}
    if set(vals) <= short:
        return WeierstrassCurve(vals.get("a", 0), vals.get("b", 0), field)
    if set(vals) <= long_:
        try:
            return WeierstrassCurve.from_long(field, **vals)
        except MathPreconditionError:
            raise
        except ValueError as exc:
            raise MathPreconditionError(str(exc)) from None
    raise UsageError(f"unknown curve coefficients {sorted(set(vals) - short - long_)}")


def _curve_args(args) -> WeierstrassCurve:
    if args.curve is None:
        raise UsageError("--curve is required")
    return parse_curve(_field(args.q), args.curve)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def cmd_report(args) -> str:
    curve = _curve_args(args)
    data = build_class_tower(curve)
    part = partition_elliptic(data)
    out = data.to_json()
    out["two_torsion_iso"] = check_two_torsion_iso(data)
    out["partition"] = {
        "equal": [str(P) for P in part.equal_part],
        "pairs": [[str(P) for P in sorted(p)] for p in part.pairs],
    }
    out["actions"] = action_tables(data)
    out["transitivity"] = transitivity_report(data).to_json()
    return _dumps(out)


def cmd_verify(args) -> str:
    curve = _curve_args(args)
    if args.matrix is None:
        raise UsageError("--matrix is required")
    M = parse_matrix(CoordRing(curve), args.matrix)
    out = cremona_check(M).to_json()
    out["matrix"] = M.to_json()
    return _dumps(out)


def cmd_make(args) -> str:
    curve = _curve_args(args)
    if args.target is None:
        raise UsageError("--target is required")
    target = parse_point(curve, args.target, curve.field)
    M = construct_normalizer(curve, target)
    return _dumps({"target": str(target), "matrix": M.to_json(), "report": cremona_check(M).to_json()})


def cmd_graph(args) -> str:
    inv = None
    if args.shape == "elliptic":
        curve = _curve_args(args)
        data = build_class_tower(curve)
        sk = build_elliptic_skeleton(data, args.depth, figure_compat=args.figure_compat)
        if args.involution is not None:
            inv = induced_automorphism(sk, parse_point(curve, args.involution, curve.field))
    elif args.shape == "line":
        sk = build_rational_line(args.q, args.depth)
        if args.involution is not None:
            inv = line_involution(sk)
    else:
        sk = build_nagao_ray(args.q, args.depth)
        if args.involution is not None:
            raise MathPreconditionError("the ray carries no nontrivial involution")
    return emit(sk, args.format, inv)


def cmd_rational(args) -> str:
    field = _field(args.q)
    if args.pi is not None:
        spec = RatRingSpec(args.q, args.pi, field=field)
        if args.delta is not None and args.delta != spec.delta:
            raise MathPreconditionError(f"deg pi = {spec.delta} but --delta {args.delta}")
    else:
        if args.delta is None or args.delta < 1:
            raise UsageError("give --pi or a positive --delta")
        pi = next(p for p in monic_irreducibles_up_to(field, args.delta, var="t") if p.degree == args.delta)
        spec = RatRingSpec(args.q, pi, field=field)
    M = parse_rat_matrix(spec, args.matrix) if args.matrix else g0_matrix(spec)
    out = rat_cremona_check(M, spec).to_json()
    out.update({"q": spec.q, "deg_pi": spec.delta, "pi": str(spec.pi), "matrix": M.to_json(),
                "cl_order": spec.delta, "quinn_order": spec.quinn_order()})
    return _dumps(out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quinnlab", description="Quasi-inner automorphisms of GL_2 over function field rings.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, curve=True):
        sp.add_argument("--q", type=int, default=7)
        if curve:
            sp.add_argument("--curve", help='"a=-3,b=0" or "a1=..,a2=..,a3=..,a4=..,a6=.."')
        sp.add_argument("--out", help="write output to FILE instead of stdout")

    sp = sub.add_parser("report", help="class groups, norm kernel, actions")
    common(sp)
    sp.set_defaults(func=cmd_report)
    sp = sub.add_parser("verify-matrix", help="Cremona criterion for a matrix over A")
    common(sp)
    sp.add_argument("--matrix")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("make-matrix", help="construct a normalizer for a 2-torsion class")
    common(sp)
    sp.add_argument("--target")
    sp.set_defaults(func=cmd_make)
    sp = sub.add_parser("graph", help="emit a quotient-graph skeleton")
    common(sp)
    sp.add_argument("--shape", choices=["elliptic", "line", "nagao"], default="elliptic")
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--involution", help='2-torsion point such as "(0,0)"; any value for the line')
    sp.add_argument("--figure-compat", action="store_true", help="hang spikes on the second ray vertex")
    sp.set_defaults(func=cmd_graph)
    sp = sub.add_parser("rational", help="genus-0 valuation criterion")
    common(sp, curve=False)
    sp.add_argument("--delta", type=int)
    sp.add_argument("--pi")
    sp.add_argument("--matrix")
    sp.set_defaults(func=cmd_rational)
    sp = sub.add_parser("selftest", help="run the built-in regression checks")
    sp.set_defaults(func=None)
    return p


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.command == "selftest":
            results = run_selftest()
            for name, ok in results:
                print(f"{'PASS' if ok else 'FAIL'} {name}", file=stdout)
            return EXIT_OK if all(ok for _, ok in results) else EXIT_INTERNAL
        text = args.func(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (MathPreconditionError, EnumerationCapExceeded, ZeroDivisionError) as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_MATH
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ParseError, ValueError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except Exception as exc:  # an unexpected crash is an internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
