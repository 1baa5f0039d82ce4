"""Command line runner: branchoper {canon, branch, pair-check, roundtrip}.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import suite
from .errors import BranchOperError, NonIntegerEigenvalue, NonReducedDivisor, ParseError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--order", type=_positive, default=8, help="series truncation order (default 8)")
    common.add_argument("--mutate", metavar="KEY", default=None, help="inject a fault into the checks keyed KEY")
    common.add_argument("--timing", action="store_true", help="include wall time in the JSON report")

    lattice = argparse.ArgumentParser(add_help=False)
    lattice.add_argument("--lattice", choices=("raw", "adapted"), default="raw",
                         help="jet lattice for branched objects (default raw)")

    p = argparse.ArgumentParser(prog="branchoper", description="Exact verification of branched SO(3)-opers.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("canon", parents=[common], help="unbranched oper checks")
    b = sub.add_parser("branch", parents=[common, lattice], help="branched model at a point of order n")
    b.add_argument("--n", type=_positive, required=True)
    pc = sub.add_parser("pair-check", parents=[common], help="check a pair file")
    pc.add_argument("path")
    rt = sub.add_parser("roundtrip", parents=[common, lattice], help="model -> pair -> reconstruction")
    rt.add_argument("--sigma", required=True, help='developing map polynomial, e.g. "z^2"')
    rt.add_argument("--emit", metavar="PATH", default=None, help="write the built pair file to PATH")
    return p


def _check_mutation(parser, args):
    if args.mutate is None:
        return
    known = suite.SUITE_MUTATIONS[args.command]
    if args.mutate not in known:
        parser.error(f"unknown --mutate key {args.mutate!r} for {args.command}; known: {', '.join(known)}")


def run(args) -> suite.SuiteReport:
    if args.command == "canon":
        return suite.cmd_canon(args.order, args.mutate)
    if args.command == "branch":
        return suite.cmd_branch(args.n, args.order, args.mutate, args.lattice)
    if args.command == "pair-check":
        from .pairfile import load
        return suite.cmd_pair_check(load(args.path), args.order, args.mutate, args.path)
    return suite.cmd_roundtrip(args.sigma, args.order, args.mutate, args.lattice, args.emit)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_mutation(parser, args)
    try:
        report = run(args)
    except ParseError as exc:
        print(f"branchoper: parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonIntegerEigenvalue as exc:
        print(f"branchoper: non-integer residue eigenvalue at {exc.point}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonReducedDivisor, BranchOperError, ValueError, OSError) as exc:
        print(f"branchoper: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = report.to_json(args.timing) if args.json else report.to_text()
    sys.stdout.write(out)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
