"""Command-line interface: count, poly, census, verify, gen, bounds.

Exit codes: 0 success / all pass, 1 verification failure, 2 usage or input
error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import random
import sys
from fractions import Fraction

from .census import (CensusCache, attains_bound, census_verdict, hypothesis_holds, run_census)
from .entropy import theorem5_constants
from .errors import CapacityError, ContractError, DomainError, ParityError, ParseError, \
    SizeError, ValidationError
from .graph import Graph, is_connected, to_graph6
from .indpoly import evaluate, independence_polynomial
from .regular import RegularClassSpec, enumerate_regular, ingest_graph6_stream
from .zhao import verify_theorem2, verify_zhao

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _num(x):
    if isinstance(x, int) and abs(x) < 2 ** 53:
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1 and abs(x) < 2 ** 53:
            return int(x)
        return str(x)
    return str(x)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _degree_range(text):
    """'3' or '2..4'."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected D or LO..HI, got {text!r}")


class Emitter:
    """JSON lines by default, CSV with ``--csv``."""

    def __init__(self, as_csv: bool, out=None):
        self.as_csv = as_csv
        self.out = out or sys.stdout
        self.writer = None

    def emit(self, row: dict):
        if not self.as_csv:
            self.out.write(json.dumps(row) + "\n")
            return
        flat = {k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in row.items()}
        if self.writer is None:
            self.writer = csv.DictWriter(self.out, fieldnames=list(flat), extrasaction="ignore",
                                         lineterminator="\n")
            self.writer.writeheader()
        self.writer.writerow(flat)


def _read_graphs(args):
    """Graphs from positional graph6 strings, ``--input`` files, or stdin."""
    if args.graph6:
        return list(ingest_graph6_stream(args.graph6))
    if args.input and args.input != "-":
        with open(args.input, encoding="ascii") as fh:
            return list(ingest_graph6_stream(fh))
    return list(ingest_graph6_stream(sys.stdin))


def cmd_count(args, out):
    for g in _read_graphs(args):
        poly = independence_polynomial(g)
        out.emit({"graph6": to_graph6(g), "n": g.n, "i": _num(sum(poly)),
                  "coeffs": [_num(c) for c in poly]})
    return EXIT_OK


def cmd_poly(args, out):
    lams = args.lam or [Fraction(1)]
    for g in _read_graphs(args):
        poly = independence_polynomial(g)
        row = {"graph6": to_graph6(g), "n": g.n, "coeffs": [_num(c) for c in poly]}
        row["values"] = {str(lam): _num(evaluate(poly, lam)) for lam in lams}
        out.emit(row)
    return EXIT_OK


def _cache(args):
    return None if args.no_cache else CensusCache()


def cmd_census(args, out):
    records = run_census(args.n, args.d, all_graphs=args.all_graphs, jobs=args.jobs,
                         cache=_cache(args))
    for r in records:
        out.emit(r.to_dict())
    verdict = census_verdict(records, args.n, args.d)
    if not args.csv:
        out.emit({"verdict": verdict})
    else:
        print(json.dumps({"verdict": verdict}), file=sys.stderr)
    ok = verdict.get("hypothesis_holds", True) and verdict.get("equality_only_at_alon", True)
    ok = ok and verdict.get("alon_unique_maximizer", True)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args, out):
    spec = RegularClassSpec(args.n, args.d, connected_only=not args.all_graphs)
    for g in enumerate_regular(spec):
        if args.manifest:
            out.emit({"graph6": to_graph6(g), "n": g.n, "d": args.d, "connected": is_connected(g)})
        else:
            out.out.write(to_graph6(g) + "\n")
    return EXIT_OK


def _scope_graphs(args):
    if args.graph6 or args.input:
        return _read_graphs(args)
    if args.n is None or args.d is None:
        raise ContractError("give --n and --d, or graph6 input")
    spec = RegularClassSpec(args.n, args.d, connected_only=not args.all_graphs)
    return list(enumerate_regular(spec))


def _verify_hypothesis(args, out):
    failed = 0
    for r in run_census(args.n, args.d, all_graphs=args.all_graphs, jobs=args.jobs,
                        cache=_cache(args)):
        equality = attains_bound(r.i, r.n, r.d)
        ok = hypothesis_holds(r.i, r.n, r.d) and equality == r.is_alon
        failed += not ok
        out.emit({"suite": "hypothesis", "graph6": r.graph6, "i": r.i_count, "ratio": r.ratio,
                  "equality": equality, "is_alon": r.is_alon, "pass": ok})
    return failed


def _verify_theorem2(args, out):
    failed = 0
    lams = args.lam or [Fraction(1)]
    for g in _scope_graphs(args):
        for lam in lams:
            rep = verify_theorem2(g, lam)
            ok = rep.holds and rep.t_bound_holds and (rep.C == 0 or rep.strict)
            failed += not ok
            row = {"suite": "theorem2", **rep.to_dict(), "strict": rep.strict,
                   "T_ge_2C": rep.t_bound_holds, "pass": ok}
            out.emit(row)
    return failed


def _verify_zhao(args, out):
    failed = 0
    lams = args.lam or [Fraction(1), Fraction(2), Fraction(1, 2)]
    if args.random:
        rng = random.Random(args.seed)
        graphs = []
        for _ in range(args.random):
            n = rng.randint(1, args.max_n)
            p = rng.random()
            edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
            graphs.append(Graph.from_edges(n, edges))
    else:
        graphs = _scope_graphs(args)
    for g in graphs:
        rep = verify_zhao(g, lams)
        failed += not rep.ok
        out.emit({"suite": "zhao", **rep.to_dict(), "pass": rep.ok})
    return failed


def _verify_bounds(args, out):
    failed = 0
    for d in args.degrees or [2, 3, 4]:
        rep = theorem5_constants(d)
        bad = rep.invariant_failures()
        failed += bool(bad)
        out.emit({"suite": "bounds", **rep.to_dict(), "D1_gap": float(rep.d1_gap),
                  "D2_gap": float(rep.d2_gap), "failures": bad, "pass": not bad})
    return failed


def cmd_verify(args, out):
    suites = {"hypothesis": _verify_hypothesis, "theorem2": _verify_theorem2,
              "zhao": _verify_zhao, "bounds": _verify_bounds}
    if args.suite == "hypothesis" and (args.n is None or args.d is None):
        raise ContractError("verify hypothesis needs --n and --d")
    failed = suites[args.suite](args, out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_bounds(args, out):
    for d in args.degrees or [2, 3, 4]:
        rep = theorem5_constants(d)
        out.emit({**rep.to_dict(), "D1_gap": float(rep.d1_gap), "D2_gap": float(rep.d2_gap)})
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="emit CSV instead of JSON lines")
    common.add_argument("--no-cache", action="store_true", help="bypass the census cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("graph6", nargs="*", help="graph6 strings (default: read --input or stdin)")
    graph_in.add_argument("--input", "-i", help="graph6 file, one graph per line ('-' for stdin)")

    lam = argparse.ArgumentParser(add_help=False)
    lam.add_argument("--lambda", dest="lam", type=_fraction, action="append",
                     help="fugacity, rational p/q syntax; repeatable")

    cls = argparse.ArgumentParser(add_help=False)
    cls.add_argument("--n", type=int)
    cls.add_argument("--d", type=_degree_range, help="degree (bounds suite: LO..HI range)")
    scope = cls.add_mutually_exclusive_group()
    scope.add_argument("--connected", action="store_true", help="connected graphs only (default)")
    scope.add_argument("--all-graphs", action="store_true",
                       help="include disconnected graphs, composed from connected pieces")

    parser = argparse.ArgumentParser(prog="regis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common, graph_in], help="count independent sets")
    p.set_defaults(func=cmd_count)
    p = sub.add_parser("poly", parents=[common, graph_in, lam], help="independence polynomial")
    p.set_defaults(func=cmd_poly)
    p = sub.add_parser("census", parents=[common, cls], help="rank a regular class by i(G)")
    p.set_defaults(func=cmd_census)
    p = sub.add_parser("gen", parents=[common, cls], help="emit one graph6 line per class")
    p.add_argument("--manifest", action="store_true",
                   help="emit JSON lines {graph6, n, d, connected} instead of bare graph6")
    p.set_defaults(func=cmd_gen)
    p = sub.add_parser("verify", parents=[common, cls, lam], help="run a verification suite")
    p.add_argument("suite", choices=["theorem2", "zhao", "hypothesis", "bounds"])
    p.add_argument("graph6", nargs="*", help="graph6 strings to verify instead of a class")
    p.add_argument("--input", "-i", help="graph6 file, one graph per line ('-' for stdin)")
    p.add_argument("--random", type=int, default=0, help="zhao: number of random graphs")
    p.add_argument("--max-n", type=int, default=9, help="zhao: largest random graph")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("bounds", parents=[common], help="entropy-method constants")
    p.add_argument("--d", dest="degrees", type=_degree_range, help="degree or range LO..HI")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify":
        args.degrees = args.d
    if args.command in ("census", "gen", "verify"):
        if args.command in ("census", "gen") and (args.n is None or args.d is None):
            print("error: --n and --d are required", file=sys.stderr)
            return EXIT_USAGE
        if args.d is not None and not (args.command == "verify" and args.suite == "bounds"):
            if len(args.d) != 1:
                print("error: --d takes a single degree here", file=sys.stderr)
                return EXIT_USAGE
            args.d = args.d[0]
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Emitter(args.csv)
    try:
        return args.func(args, out)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, ParityError, SizeError, ContractError, DomainError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
