"""Command-line driver.

Exit codes: 0 success, 1 structure absent where presence was demanded,
2 a suite found a caveat-free failure, 3 input error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .bisimplicial import bisimplicial_vertices, check_main_theorem, clique_cover
from .cutsets import is_splendid
from .detectors import DETECTORS, find_extended_near_prism, find_pyramid
from .formats import FormatError, parse_graph
from .graph import BudgetExhausted, Graph, GraphError
from .harness.enumerate import ALL_LABELED, CANONICAL, RANDOM, EnumerationError, EnumerationSpec
from .harness.suites import SUITES, run_suite
from .strips.pyramid import search_pyramid_strip_system
from .strips.tree import DEFAULT_SEARCH_BUDGET, search_tree_strip_system

EXIT_OK, EXIT_ABSENT, EXIT_ALARM, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3, 4

FORMATS = ("auto", "graph6", "edgelist", "json")


class InputError(ValueError):
    pass


def _emit(doc, pretty: bool) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2 if pretty else None))


def _budget(args) -> Optional[int]:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("EHL_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"EHL_BUDGET must be an integer, got {env!r}") from None
    return None


def _guess_format(text: str) -> str:
    s = text.lstrip()
    if s.startswith("{"):
        return "json"
    first = s.splitlines()[0].split() if s else []
    if len(first) == 2 and all(t.isdigit() for t in first):
        return "edgelist"
    return "graph6"


def _read_graph(args) -> Graph:
    src = args.graph
    if src == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(src) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {src}: {exc.strerror}") from None
    fmt = args.format if args.format != "auto" else _guess_format(text)
    return parse_graph(text, fmt).graph


def _vertex(G: Graph, v: int) -> int:
    if not 0 <= v < G.n:
        raise InputError(f"vertex {v} out of range for a graph on {G.n} vertices")
    return v


def _vertex_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"expected comma-separated vertices, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    vs = _vertex_list(text)
    if len(vs) != 2:
        raise InputError(f"expected two vertices a,b, got {text!r}")
    return vs


# ---------------------------------------------------------------------------
# subcommands


def cmd_detect(args) -> int:
    G = _read_graph(args)
    budget = _budget(args)
    name = args.structure
    if args.apex is not None and name != "pyramid":
        raise InputError("--apex applies to pyramid only")
    if args.cross_edge is not None and name != "extended-near-prism":
        raise InputError("--cross-edge applies to extended-near-prism only")
    if name == "pyramid" and args.apex is not None:
        cert = find_pyramid(G, apex=_vertex(G, args.apex), budget=budget)
    elif name == "extended-near-prism" and args.cross_edge is not None:
        a, b = (_vertex(G, v) for v in _pair(args.cross_edge))
        cert = find_extended_near_prism(G, cross_edge=(a, b), budget=budget)
    else:
        cert = DETECTORS[name](G, budget=budget)
    if cert is None:
        print("absent:certified")
        return EXIT_ABSENT if args.require else EXIT_OK
    _emit(cert.to_json(), args.pretty)
    return EXIT_OK


def cmd_bisimplicial(args) -> int:
    G = _read_graph(args)
    if args.clique is None:
        bis = sorted(bisimplicial_vertices(G))
        covers = {str(v): [sorted(c) for c in clique_cover(G, v)] for v in bis}
        _emit({"bisimplicial": bis, "cliques": covers}, args.pretty)
        return EXIT_OK
    K = tuple(_vertex(G, v) for v in _vertex_list(args.clique))
    verdict = check_main_theorem(G, K)
    _emit(verdict.to_json(), args.pretty)
    return EXIT_ALARM if verdict.status == "violated" else EXIT_OK


def cmd_splendid(args) -> int:
    G = _read_graph(args)
    _emit(is_splendid(G, _vertex(G, args.vertex)).to_json(), args.pretty)
    return EXIT_OK


def cmd_decompose(args) -> int:
    G = _read_graph(args)
    budget = _budget(args)
    if budget is None:
        budget = DEFAULT_SEARCH_BUDGET
    if args.kind == "tree-strip":
        if args.edge is None:
            raise InputError("tree-strip needs --edge a,b")
        a, b = (_vertex(G, v) for v in _pair(args.edge))
        if not G.has_edge(a, b):
            raise InputError(f"{a},{b} is not an edge")
        res = search_tree_strip_system(G, a, b, budget=budget)
        system = res.context
    else:
        if args.apex is None:
            raise InputError("pyramid-strip needs --apex v")
        res = search_pyramid_strip_system(G, _vertex(G, args.apex), budget=budget)
        system = res.system
    doc = res.to_json()
    if system is None and res.report.get("budget") == "exhausted":
        _emit(doc, args.pretty)
        return EXIT_BUDGET
    _emit(doc, args.pretty)
    return EXIT_OK if system is not None else EXIT_ABSENT


def cmd_verify(args) -> int:
    spec = EnumerationSpec(args.n, args.mode, count=args.count, seed=args.seed, min_n=args.min_n)
    report = run_suite(args.suite, spec, jobs=args.jobs, budget=_budget(args))
    if args.pretty:
        print(report.table())
    else:
        print(report.dumps(timing=not args.no_timing))
    if report.alarms:
        return EXIT_ALARM
    if report.budget_hits:
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="search-node budget (default: $EHL_BUDGET, else unbounded for detectors "
                             f"and {DEFAULT_SEARCH_BUDGET} for decompositions)")
    common.add_argument("--pretty", action="store_true", help="indented JSON, or a table for verify")
    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--format", choices=FORMATS, default="auto", help="input format (default: guess)")

    def graph_arg(sp):
        # added after each subcommand's own positionals so "detect theta FILE" parses as written
        sp.add_argument("graph", nargs="?", default="-", help="graph file, or - for stdin (default)")

    p = argparse.ArgumentParser(prog="ehl", description="Detectors, decompositions and verification suites "
                                                       "for even-hole-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", parents=[common, graph_in], help="find an induced structure")
    d.add_argument("structure", choices=sorted(DETECTORS))
    d.add_argument("--apex", type=int, help="pyramid apex")
    d.add_argument("--cross-edge", help="cross-edge a,b of an extended near-prism")
    d.add_argument("--require", action="store_true", help="exit 1 when the structure is absent")
    graph_arg(d)
    d.set_defaults(func=cmd_detect)

    b = sub.add_parser("bisimplicial", parents=[common, graph_in], help="bisimplicial vertices")
    b.add_argument("--clique", help="clique K as a,b; check a vertex outside N[K] is bisimplicial")
    graph_arg(b)
    b.set_defaults(func=cmd_bisimplicial)

    s = sub.add_parser("splendid", parents=[common, graph_in], help="test whether a vertex is splendid")
    s.add_argument("vertex", type=int)
    graph_arg(s)
    s.set_defaults(func=cmd_splendid)

    c = sub.add_parser("decompose", parents=[common, graph_in], help="maximum strip systems")
    c.add_argument("kind", choices=("tree-strip", "pyramid-strip"))
    c.add_argument("--edge", help="cross-edge a,b (tree-strip)")
    c.add_argument("--apex", type=int, help="apex (pyramid-strip)")
    graph_arg(c)
    c.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--n", type=int, required=True,
                   help="vertex bound for graph suites, tree size in edges for tree suites, "
                        "added vertices for pyramid suites")
    v.add_argument("--min-n", type=int, default=None, help="sweep sizes min-n..n (graph suites)")
    v.add_argument("--mode", choices=(ALL_LABELED, CANONICAL, RANDOM), default=CANONICAL)
    v.add_argument("--count", type=int, default=0, help="instances for random and generator suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-timing", action="store_true", help="omit wall time so reports diff cleanly")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # argparse binds an optional positional to nothing once an option precedes it,
        # so a graph path written after the options arrives here as a leftover
        if len(extra) == 1 and getattr(args, "graph", None) == "-" and not extra[0].startswith("--"):
            args.graph = extra[0]
        elif extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, FormatError, GraphError, EnumerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
