"""Bisimplicial vertices and the statement-level checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Graph, VertexLike, as_mask, as_set, bits, is_clique_mask


def is_bisimplicial(G: Graph, v: int) -> bool:
    """N(v) is the union of two cliques.

    Equivalently the complement of G[N(v)] is bipartite, which is what we
    test, by 2-colouring that complement breadth first.
    """
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range")
    return _complement_bipartite(G.rows, G.rows[v])


def _complement_bipartite(rows, nb: int) -> bool:
    colour: dict[int, int] = {}
    for root in bits(nb):
        if root in colour:
            continue
        colour[root] = 0
        queue = [root]
        while queue:
            x = queue.pop()
            # neighbours of x in the complement, restricted to N(v)
            for y in bits(nb & ~rows[x] & ~(1 << x)):
                if y not in colour:
                    colour[y] = colour[x] ^ 1
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True


def bisimplicial_mask(G: Graph) -> int:
    rows = G.rows
    out = 0
    for v in range(G.n):
        if _complement_bipartite(rows, rows[v]):
            out |= 1 << v
    return out


def bisimplicial_vertices(G: Graph) -> frozenset[int]:
    return as_set(bisimplicial_mask(G))


def clique_cover(G: Graph, v: int) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Two cliques whose union is N(v), or None when v is not bisimplicial."""
    nb = G.rows[v]
    rows = G.rows
    side: dict[int, int] = {}
    for root in bits(nb):
        if root in side:
            continue
        side[root] = 0
        queue = [root]
        while queue:
            x = queue.pop()
            for y in bits(nb & ~rows[x] & ~(1 << x)):
                if y not in side:
                    side[y] = side[x] ^ 1
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    first = frozenset(u for u, s in side.items() if s == 0)
    second = frozenset(u for u, s in side.items() if s == 1)
    return first, second


@dataclass(frozen=True)
class MainTheoremVerdict:
    """Outcome of checking one (G, K) instance.

    ``status`` is ``"holds"``, ``"violated"`` or ``"inapplicable"``; the
    last covers inputs where K is not a clique of size at most two, M is
    empty, or G has an even hole (when that check is requested).
    """

    status: str
    clique_K: frozenset[int]
    set_M: frozenset[int]
    witness: Optional[int] = None
    reason: str = ""
    violation_graph: Optional[Graph] = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "K": sorted(self.clique_K),
            "M": sorted(self.set_M),
            "witness": self.witness,
            "reason": self.reason,
            "violation_graph": None if self.violation_graph is None else self.violation_graph.edges(),
        }


def check_main_theorem(G: Graph, K: VertexLike = (), assume_even_hole_free: bool = False) -> MainTheoremVerdict:
    """For a clique K with |K| <= 2, some vertex of M = V \\ N[K] is bisimplicial.

    The even-hole-free hypothesis is checked unless the caller vouches for
    it with ``assume_even_hole_free`` (the harness filters graphs first).
    """
    from .detectors import find_even_hole

    k = as_mask(G, K)
    kset = as_set(k)
    covered = G.closed_nbhd(k)
    m = G.full & ~covered
    mset = as_set(m)
    if k.bit_count() > 2 or not is_clique_mask(G, k):
        return MainTheoremVerdict("inapplicable", kset, mset, reason="K is not a clique of size at most 2")
    if not m:
        return MainTheoremVerdict("inapplicable", kset, mset, reason="M is empty")
    if not assume_even_hole_free and find_even_hole(G) is not None:
        return MainTheoremVerdict("inapplicable", kset, mset, reason="G has an even hole")
    rows = G.rows
    for v in bits(m):
        if _complement_bipartite(rows, rows[v]):
            return MainTheoremVerdict("holds", kset, mset, witness=v)
    return MainTheoremVerdict("violated", kset, mset, reason="no vertex of M is bisimplicial", violation_graph=G)
