"""Command-line front end.

Exit status: 0 when the command produced results, 1 when there are no
solutions/candidates (or a verified residual is nonzero), 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import output
from .errors import NoSolutionError, PolysolError
from .parsing import parse_expression, parse_problem, parse_rational
from .solver import exists_solution, scan_degrees, solutions, solve_parameters, verify

EXIT_OK, EXIT_NONE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _degree_range(text):
    lo, sep, hi = text.partition("..")
    if not sep or not lo.strip().isdigit() or not hi.strip().isdigit():
        raise argparse.ArgumentTypeError("expected LO..HI")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range")
    return lo, hi


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file")
    common.add_argument("--format", choices=output.FORMATS, default="plain")
    common.add_argument("--precision", type=int, help="working precision in decimal digits")
    common.add_argument("--normalize", choices=("monic", "primitive"))
    common.add_argument("--degree", type=int, help="override the file's degree")
    common.add_argument("--degrees", type=_degree_range, metavar="LO..HI",
                        help="override the file's degree range")
    common.add_argument("--let", action="append", default=[], metavar="SYM=VALUE",
                        help="bind a parameter to a rational (repeatable)")

    parser = argparse.ArgumentParser(
        prog="polysol",
        description="Polynomial solutions of linear ODEs with polynomial coefficients.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("exists", parents=[common], help="decide existence at one degree")
    sub.add_parser("solve", parents=[common], help="construct solutions of one degree")
    sub.add_parser("scan", parents=[common], help="solutions of every degree in a range")
    p = sub.add_parser("params", parents=[common], help="determine unknown parameters")
    p.add_argument("--unknowns", help="comma-separated elimination order")
    p.add_argument("--all", action="store_true", help="also list rejected candidates")
    v = sub.add_parser("verify", parents=[common], help="substitute a candidate solution")
    v.add_argument("--solution", required=True, help="polynomial expression in x")
    return parser


def _load(args):
    try:
        with open(args.problem, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {args.problem}: {e.strerror}") from None
    spec = parse_problem(text)
    for item in args.let:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in spec.symbols:
            raise InputError(f"--let {item!r}: unknown symbol or missing '='")
        spec.bindings[name] = parse_rational(value)
        if name in spec.unknowns:
            spec.unknowns.remove(name)
    if args.precision is not None:
        if args.precision < 1:
            raise InputError("--precision must be positive")
        spec.precision = args.precision
    if args.normalize:
        spec.normalize = args.normalize
    if args.degree is not None:
        spec.degree, spec.degree_range = args.degree, None
    elif args.degrees is not None:
        spec.degree, spec.degree_range = None, args.degrees
    return spec


def _single_degree(spec):
    if spec.degree is None:
        raise InputError("this command needs a single degree (degree: n or --degree)")
    return spec.degree


def run(args, out):
    spec = _load(args)
    L = spec.operator()
    fmt = args.format
    cmd = args.command

    if cmd in ("exists", "solve", "scan"):
        free = L.free_symbols - set(spec.bindings)
        if free:
            raise InputError("unbound parameter(s): " + ", ".join(sorted(free))
                             + " (bind with 'let' or --let, or use params)")

    if cmd == "exists":
        rep = exists_solution(L, _single_degree(spec), spec.bindings, spec.precision)
        out.write(output.render_exists(rep, fmt).text)
        return EXIT_OK if rep.exists else EXIT_NONE

    if cmd == "solve":
        n = _single_degree(spec)
        try:
            sols = solutions(L, n, spec.bindings, spec.precision)
        except NoSolutionError:
            sols = []
        out.write(output.render_solutions(n, sols, fmt, spec.normalize).text)
        return EXIT_OK if sols else EXIT_NONE

    if cmd == "scan":
        degrees = spec.degrees()
        if not degrees:
            raise InputError("scan needs a degree range (degrees: lo..hi or --degrees)")
        found = scan_degrees(L, degrees[-1], spec.bindings, spec.precision)
        found = {n: found[n] for n in degrees}
        out.write(output.render_scan(found, fmt, spec.normalize).text)
        return EXIT_OK if any(found.values()) else EXIT_NONE

    if cmd == "params":
        unknowns = spec.unknowns
        if args.unknowns:
            unknowns = [u.strip() for u in args.unknowns.split(",") if u.strip()]
            bad = [u for u in unknowns if u not in spec.symbols]
            if bad:
                raise InputError("undeclared unknown(s): " + ", ".join(bad))
        if not unknowns:
            raise InputError("params needs unknowns (unknown lines or --unknowns)")
        bindings = {s: v for s, v in spec.bindings.items() if s not in unknowns}
        cands = solve_parameters(L, _single_degree(spec), unknowns, bindings,
                                 spec.precision, include_rejected=args.all)
        out.write(output.render_candidates(cands, unknowns, fmt, spec.normalize).text)
        return EXIT_OK if any(c.verified for c in cands) else EXIT_NONE

    if cmd == "verify":
        y = parse_expression(args.solution, spec.symbols)
        rep = verify(L, y, spec.bindings, spec.precision)
        out.write(output.render_verify(rep, fmt).text)
        return EXIT_OK if rep.is_zero else EXIT_NONE

    raise InputError(f"unknown command {cmd}")


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return run(args, out)
    except (InputError, PolysolError) as e:
        err.write(f"polysol: error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
