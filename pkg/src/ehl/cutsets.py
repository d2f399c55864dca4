"""Cutsets, star cutsets, splendid vertices and the hole-neighbourhood
trichotomy."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .detectors import Pyramid, find_even_hole, find_pyramid
from .graph import Graph, VertexLike, as_mask, as_set, bits, components_mask, is_clique_mask, is_hole, mask_of
from .results import CheckResult, failed, inapplicable, passed

EXHAUSTIVE_DEGREE_BOUND = 12


def _split(G: Graph, C: int) -> Optional[tuple[int, int]]:
    comps = components_mask(G, G.full & ~C)
    if len(comps) < 2:
        return None
    first = comps[0]
    return first, G.full & ~C & ~first


def is_cutset(G: Graph, C: VertexLike) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Split V(G) minus C into two nonempty anticomplete halves, if possible.

    With three or more components the first component (by smallest vertex)
    is returned against the union of the others.
    """
    hit = _split(G, as_mask(G, C))
    if hit is None:
        return None
    return as_set(hit[0]), as_set(hit[1])


@dataclass(frozen=True)
class StarCutsetWitness:
    centre: int
    cutset: frozenset[int]
    sides: tuple[frozenset[int], frozenset[int]]

    def validate(self, G: Graph) -> bool:
        c = mask_of(self.cutset)
        if not c >> self.centre & 1 or c & ~G.closed(self.centre):
            return False
        x, y = (mask_of(s) for s in self.sides)
        if not x or not y or x & y or (x | y | c) != G.full or (x | y) & c:
            return False
        return G.nbhd(x) & y == 0

    def to_json(self) -> dict:
        return {"centre": self.centre, "cutset": sorted(self.cutset), "sides": [sorted(s) for s in self.sides]}


def _witness(v: int, C: int, split: tuple[int, int]) -> StarCutsetWitness:
    return StarCutsetWitness(v, as_set(C), (as_set(split[0]), as_set(split[1])))


def find_full_star_cutset(G: Graph, centre: Optional[int] = None) -> Optional[StarCutsetWitness]:
    centres = range(G.n) if centre is None else (centre,)
    for v in centres:
        C = G.closed(v)
        split = _split(G, C)
        if split:
            return _witness(v, C, split)
    return None


def find_star_cutset(G: Graph, centre: Optional[int] = None,
                     degree_bound: int = EXHAUSTIVE_DEGREE_BOUND) -> Optional[StarCutsetWitness]:
    """A star cutset, optionally with a fixed centre.

    Low-degree centres are searched exhaustively over neighbour subsets,
    smallest first, so the returned cutset is a smallest one for that
    centre.  Higher degrees use the component criterion, which decides
    existence exactly:

    * two or more components outside N[v]: N[v] itself works;
    * one component X: {v} plus the neighbours of v that see X works iff
      some neighbour of v misses X;
    * nothing outside N[v]: a cutset exists iff N(v) is not a clique.
    """
    centres = range(G.n) if centre is None else (centre,)
    for v in centres:
        nb = G.rows[v]
        if nb.bit_count() <= degree_bound:
            hit = _star_exhaustive(G, v)
        else:
            hit = _star_by_components(G, v)
        if hit:
            return hit
    return None


def _star_exhaustive(G: Graph, v: int) -> Optional[StarCutsetWitness]:
    nbrs = list(bits(G.rows[v]))
    for size in range(len(nbrs) + 1):
        for S in itertools.combinations(nbrs, size):
            C = 1 << v | mask_of(S)
            split = _split(G, C)
            if split:
                return _witness(v, C, split)
    return None


def _star_by_components(G: Graph, v: int) -> Optional[StarCutsetWitness]:
    nb = G.rows[v]
    outside = G.full & ~(nb | 1 << v)
    comps = components_mask(G, outside)
    if len(comps) >= 2:
        C = nb | 1 << v
    elif len(comps) == 1:
        seen = G.nbhd(comps[0]) & nb
        if seen == nb:
            return None
        C = seen | 1 << v
    else:
        if is_clique_mask(G, nb):
            return None
        x = next(u for u in bits(nb) if nb & ~G.rows[u] & ~(1 << u))
        y = next(bits(nb & ~G.rows[x] & ~(1 << x)))
        C = (nb & ~(1 << x | 1 << y)) | 1 << v
    split = _split(G, C)
    return _witness(v, C, split) if split else None


NOT_CONNECTED_OUTSIDE = "NotConnectedOutside"
NEIGHBOUR_TRAPPED = "NeighbourTrapped"
SHORT_PYRAMID_APEX = "ShortPyramidApex"


@dataclass(frozen=True)
class SplendidVerdict:
    vertex: int
    ok: bool
    failed_clause: Optional[str] = None
    witness: Union[None, int, tuple, Pyramid] = None
    outside_empty: bool = False

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, Pyramid):
            w = w.to_json()
        return {"vertex": self.vertex, "ok": self.ok, "failed_clause": self.failed_clause,
                "witness": w, "outside_empty": self.outside_empty}


def is_splendid(G: Graph, a: int) -> SplendidVerdict:
    """The three splendid clauses, in order, with the first failure reported.

    The outside V(G) minus N[a] must be nonempty as well as connected.
    """
    if not 0 <= a < G.n:
        raise ValueError(f"vertex {a} out of range")
    outside = G.full & ~G.closed(a)
    comps = components_mask(G, outside)
    if len(comps) != 1:
        return SplendidVerdict(a, False, NOT_CONNECTED_OUTSIDE,
                               tuple(sorted(as_set(c)) for c in comps) if comps else None,
                               outside_empty=not comps)
    for u in bits(G.rows[a]):
        if not G.rows[u] & outside:
            return SplendidVerdict(a, False, NEIGHBOUR_TRAPPED, u)
    pyr = find_pyramid(G, apex=a, short_only=True)
    if pyr is not None:
        return SplendidVerdict(a, False, SHORT_PYRAMID_APEX, pyr)
    return SplendidVerdict(a, True)


def check_hole_neighbourhood_trichotomy(G: Graph, hole, a: int, assume_even_hole_free: bool = False) -> CheckResult:
    """How a vertex without a full star cutset at it can see a hole.

    Passes when a is complete or anticomplete to the hole, when its
    neighbours on the hole induce a path, or when it has exactly three
    neighbours there with two of them adjacent.
    """
    hole = tuple(hole)
    if not is_hole(G, hole):
        raise ValueError("not a hole of G")
    if a in hole:
        raise ValueError("a lies on the hole")
    if _split(G, G.closed(a)) is not None:
        return inapplicable("G has a full star cutset centred at a")
    if not assume_even_hole_free and find_even_hole(G) is not None:
        return inapplicable("G has an even hole")
    hm = mask_of(hole)
    sp = G.rows[a] & hm
    if sp == 0 or sp == hm:
        return passed(detail="complete or anticomplete")
    if len(components_mask(G, sp)) == 1:
        return passed(detail="neighbours induce a path")
    if sp.bit_count() == 3 and any(G.rows[s] & sp for s in bits(sp)):
        return passed(detail="three neighbours, two adjacent")
    return failed(witness={"hole": hole, "a": a, "neighbours": sorted(bits(sp))},
                  detail="neighbourhood on the hole fits none of the alternatives")
