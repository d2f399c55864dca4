"""Small named graphs shared by the tests."""

from __future__ import annotations

import itertools

from ehl.graph import Graph


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def wheel(rim: int) -> Graph:
    """C_rim on 0..rim-1 plus a hub ``rim`` adjacent to all of it."""
    return cycle(rim).add_vertex(range(rim))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def prism() -> Graph:
    """Triangles 0,1,2 and 3,4,5 joined by the matching i -- i+3."""
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)])


def short_pyramid() -> Graph:
    """Triangle b1 b2 b3 = 0 1 2; apex a = 3 adjacent to b3; a-x-b1 and a-y-b2 with x = 4, y = 5."""
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 2), (3, 4), (4, 0), (3, 5), (5, 1)])


def theta(lengths) -> Graph:
    """Ends 0 and 1 joined by internally disjoint paths of the given lengths."""
    edges = []
    n = 2
    for L in lengths:
        prev = 0
        for _ in range(L - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Graph.from_edges(n, edges)


def shared_corner_near_prism() -> Graph:
    """Triangles 0,1,2 and 2,3,4 sharing 2; paths 0-5-3 and 1-6-4."""
    return Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (0, 5), (5, 3), (1, 6), (6, 4)])


def subdivided_prism_with_cross_edge() -> Graph:
    """The prism with the matching edges 0-3 and 1-4 subdivided by 6 and 7,
    and the cross-edge 6-7 added."""
    return Graph.from_edges(8, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 5),
                                (0, 6), (6, 3), (1, 7), (7, 4), (6, 7)])
