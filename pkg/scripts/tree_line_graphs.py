#!/usr/bin/env python3
"""List every extended tree line-graph H(T) up to a tree size, with the
leaf bipartition used, the graph in graph6 and the J-strip system found by
the optimal search on the cross-edge.

    python scripts/tree_line_graphs.py --max-edges 9
"""

import argparse
import sys

from ehl.formats import to_graph6
from ehl.harness.generators import extended_tree_line_graphs, trees_with_edges
from ehl.strips.tree import search_tree_strip_system


def main(argv=None):
    p = argparse.ArgumentParser(description="enumerate extended tree line-graphs")
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--search", action="store_true", help="re-find each system from the graph alone")
    args = p.parse_args(argv)

    trees = sum(len(trees_with_edges(m)) for m in range(2, args.max_edges + 1))
    print(f"{trees} trees with 2..{args.max_edges} edges")
    found = 0
    for inst in extended_tree_line_graphs(max_edges=args.max_edges):
        found += 1
        G, ctx = inst.graph, inst.context
        print(f"tree {[list(e) for e in inst.tree.edges]}  side {sorted(inst.bipartition[0])}  "
              f"n={G.n} m={G.m}  {to_graph6(G)}")
        if args.search:
            res = search_tree_strip_system(G, ctx.a, ctx.b)
            J = res.context.system.J.edges if res.context else None
            print(f"    search: {res.maximality}, {res.nodes} nodes, J = {J}")
    print(f"{found} valid (tree, bipartition) pairs")
    return 0


if __name__ == "__main__":
    sys.exit(main())
