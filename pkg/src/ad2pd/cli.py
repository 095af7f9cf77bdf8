"""Command-line front end.

Exit codes: 0 feasible (or success), 1 infeasible / invalid certificate,
2 budget exhausted, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gen
from .conflict import build_conflict_graph, find_claw, scan_forbidden
from .dispatch import choose_strategy, solve
from .exact import SearchBudget
from .graph import (
    ParseError,
    decomposition_from_pairs,
    format_decomposition,
    format_graph,
    girth,
    parse_decomposition,
    parse_graph,
    parse_weights,
    verify_decomposition,
)
from .matching import PreconditionError
from .reduction import build_reduction, decomposition_from_assignment, parse_dimacs_cnf
from .rng import SplitMix64

EXIT_OK, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(fmt: str, record: dict, lines: list[str] = ()) -> None:
    if fmt == "json":
        print(json.dumps(record, sort_keys=True))
        return
    head = {k: v for k, v in record.items() if not isinstance(v, (list, dict))}
    print(" ".join(f"{k}={v}" for k, v in head.items()))
    for line in lines:
        print(line)


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.input))
    weights = parse_weights(_read(args.weights)) if args.weights else None
    budget = SearchBudget(args.node_limit, args.time_limit)
    try:
        report = solve(g, args.strategy, budget, weights)
    except PreconditionError as exc:
        raise UsageError(f"strategy refused: {exc}") from exc
    record = {"verdict": report.verdict, "strategy": report.strategy}
    if report.verdict == "feasible":
        record["paths"] = len(report.paths)
        if report.cost is not None:
            record["cost"] = report.cost
    if args.timing:
        record["seconds"] = round(report.seconds, 6)
    lines = [f"path={p}" for p in report.paths]
    if args.format == "json":
        record["paths"] = [list(p.vertices) for p in report.paths]
        record["members"] = [list(p.members) for p in report.paths]
    _emit(args.format, record, lines)
    if args.out and report.verdict == "feasible":
        _write(args.out, format_decomposition(report.paths))
    return {"feasible": EXIT_OK, "infeasible": EXIT_INFEASIBLE}.get(report.verdict, EXIT_BUDGET)


def cmd_analyze(args) -> int:
    g = parse_graph(_read(args.input))
    k = girth(g)
    h = build_conflict_graph(g)
    claw = find_claw(h)
    record = {
        "girth": "acyclic" if k is None else k,
        "twopaths": len(h.paths),
        "conflicts": len(h.edges),
        "clawfree": "yes" if claw is None else "no",
    }
    if claw is not None:
        c = claw
        record["claw"] = ";".join(str(h.paths[i]) for i in (c.center,) + c.leaves)
    if args.forbidden:
        witness = scan_forbidden(g)
        record["forbidden"] = "none" if witness is None else str(witness)
    record["strategy"] = choose_strategy(g)
    _emit(args.format, record)
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_dimacs_cnf(_read(args.cnf))
    r = build_reduction(f)
    _write(args.out, format_graph(r.digraph))
    if args.provenance:
        _write(args.provenance, "".join(line + "\n" for line in r.provenance_lines()))
    record = {"vertices": r.digraph.n, "arcs": len(r.digraph.arcs)}
    if args.assignment is not None:
        lits = [int(x) for x in args.assignment.replace(",", " ").split()]
        values = [False] * (f.n + 1)
        for lit in lits:
            if abs(lit) > f.n:
                raise UsageError(f"literal {lit} outside 1..{f.n}")
            values[abs(lit)] = lit > 0
        paths = decomposition_from_assignment(r, values)
        if paths is None:
            record["certificate"] = "assignment-unsatisfying"
            _emit(args.format, record)
            return EXIT_INFEASIBLE
        record["certificate"] = len(paths)
        if args.certificate:
            _write(args.certificate, format_decomposition(paths))
    if args.out in (None, "-"):
        # keep stdout a clean graph file
        print(" ".join(f"{k}={v}" for k, v in record.items()), file=sys.stderr)
    else:
        _emit(args.format, record)
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = SplitMix64(args.seed)
    if args.kind == "sp":
        if args.ops < 0:
            raise UsageError("--ops must be >= 0")
        g = gen.random_sp(args.ops, rng)
    elif args.kind == "cycle":
        if args.n < 2:
            raise UsageError("--n must be >= 2")
        g = gen.cycle(args.n, directed=not args.undirected)
    else:
        if args.n < 1 or not 0 <= args.p <= 1:
            raise UsageError("--n must be >= 1 and --p in [0, 1]")
        if args.min_girth5:
            g = gen.random_girth5(args.n, args.p, rng, directed=not args.undirected)
        else:
            g = gen.random_graph(args.n, args.p, rng, directed=not args.undirected)
    _write(args.out, format_graph(g))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.input))
    pairs = parse_decomposition(_read(args.decomposition))
    try:
        paths = decomposition_from_pairs(g, pairs)
    except (ValueError, IndexError) as exc:
        _emit(args.format, {"valid": "no", "violation": f"non-path: {exc}"})
        return EXIT_INFEASIBLE
    problem = verify_decomposition(g, paths)
    if problem is None:
        _emit(args.format, {"valid": "yes", "paths": len(paths)})
        return EXIT_OK
    _emit(args.format, {"valid": "no", "violation": str(problem)})
    return EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="key=value lines (default) or one JSON object")
    p = _Parser(prog="ad2pd", description="Almost-disjoint 2-path decompositions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="decide / find a decomposition")
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--strategy", choices=("auto", "sp", "girth5", "clawfree", "exact"), default="auto")
    s.add_argument("--weights", help="file of '<member> <member> <cost>' lines")
    s.add_argument("--node-limit", type=int, default=10**8)
    s.add_argument("--time-limit", type=float, default=300.0)
    s.add_argument("--out", "-o", help="write the decomposition as member-id pairs")
    s.add_argument("--timing", action="store_true", help="include wall time in the report")
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("analyze", parents=[common], help="girth, conflict graph and claw report")
    a.add_argument("--input", "-i", required=True)
    a.add_argument("--forbidden", action="store_true", help="also scan the forbidden-subgraph catalog")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", parents=[common], help="build the reduction digraph of a 3-CNF formula")
    r.add_argument("--cnf", required=True)
    r.add_argument("--out", "-o")
    r.add_argument("--provenance")
    r.add_argument("--assignment", help="literals such as '1 -2 3'; builds the certificate")
    r.add_argument("--certificate", help="write the certificate decomposition here")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    g.add_argument("kind", choices=("sp", "cycle", "random"))
    g.add_argument("--ops", type=int, default=10, help="compositions for 'sp'")
    g.add_argument("--n", type=int, default=6, help="vertices for 'cycle' / 'random'")
    g.add_argument("--p", type=float, default=0.3, help="member probability for 'random'")
    g.add_argument("--undirected", action="store_true")
    g.add_argument("--min-girth5", action="store_true", help="'random': delete members on short cycles")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="check a decomposition file")
    v.add_argument("--input", "-i", required=True)
    v.add_argument("--decomposition", "-d", required=True)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"ad2pd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
