"""Completed strips: a proper strip with an apex over its A side, the
components hanging off A and C, and backdoor paths for the apex side."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..graph import Graph, Path, as_set, bits, components_mask, is_clique_mask, mask_of
from ..results import CheckResult, failed, inapplicable, passed
from .core import OK, BulletVerdict, Strip, rung_cover


@dataclass(frozen=True, eq=False)
class CompletedStrip:
    strip: Strip
    a: int
    D: frozenset[int]
    Z: frozenset[int]
    backdoors: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "D", frozenset(self.D))
        object.__setattr__(self, "Z", frozenset(self.Z))
        object.__setattr__(self, "backdoors", {z: tuple(p) for z, p in self.backdoors.items()})

    @property
    def core(self) -> frozenset[int]:
        """A, C and D together."""
        return self.strip.A | self.strip.C | self.D

    def to_json(self) -> dict:
        return {
            "strip": self.strip.to_json(),
            "a": self.a,
            "D": sorted(self.D),
            "Z": sorted(self.Z),
            "backdoors": {str(z): list(p) for z, p in sorted(self.backdoors.items())},
        }


def compute_D(G: Graph, S: Strip, a: int) -> int:
    """Union of the components of G minus V(S) and N[a] that touch A or C."""
    vs = mask_of(S.vertices)
    ac = mask_of(S.A | S.C)
    out = 0
    for F in components_mask(G, G.full & ~vs & ~G.closed(a)):
        if G.nbhd(F) & ac:
            out |= F
    return out


def compute_Z(G: Graph, S: Strip, a: int, D: int) -> int:
    """Vertices outside V(S), equal or adjacent to a, with a neighbour in A, C or D."""
    vs = mask_of(S.vertices)
    acd = mask_of(S.A | S.C) | D
    out = 0
    for v in bits(G.closed(a) & ~vs):
        if G.rows[v] & acd:
            out |= 1 << v
    return out


def backdoor_ends(G: Graph, S: Strip, D: int) -> int:
    """Vertices outside V(S) and D that are complete to B and have no
    neighbour in A, C or D."""
    vs = mask_of(S.vertices)
    B = mask_of(S.B)
    acd = mask_of(S.A | S.C) | D
    out = 0
    for v in bits(G.full & ~vs & ~D):
        if G.rows[v] & B == B and not G.rows[v] & acd:
            out |= 1 << v
    return out


def is_backdoor(G: Graph, S: Strip, D: int, z: int, path) -> bool:
    p = Path(tuple(path))
    if len(p.verts) < 2 or p.verts[0] != z or not p.is_induced(G):
        return False
    b = p.verts[-1]
    if not backdoor_ends(G, S, D) >> b & 1:
        return False
    blocked = mask_of(S.vertices) | D
    for x in p.interior:
        if blocked >> x & 1 or G.rows[x] & blocked:
            return False
    return True


def find_backdoor(G: Graph, S: Strip, D: int, z: int) -> Optional[tuple[int, ...]]:
    """A shortest backdoor for z; shortest paths are induced."""
    ends = backdoor_ends(G, S, D) & ~(1 << z)
    if not ends:
        return None
    blocked = mask_of(S.vertices) | D
    inner = 0
    for x in range(G.n):
        if not (blocked >> x & 1) and not G.rows[x] & blocked:
            inner |= 1 << x
    inner &= ~(1 << z)
    parent = {z: None}
    frontier = [z]
    while frontier:
        nxt = []
        for x in frontier:
            hit = G.rows[x] & ends
            if hit:
                q = min(bits(hit))
                path = [q, x]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            for y in bits(G.rows[x] & inner):
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    return None


def complete_strip(G: Graph, S: Strip, a: int) -> tuple[Optional[CompletedStrip], str]:
    """Compute D and Z for (S, a) and a backdoor for each vertex of Z.

    Returns the completed strip, or None with the name of the failed
    requirement.
    """
    if not S.proper:
        return None, "strip is not proper"
    A, B, C = S.masks
    if a in S.vertices or G.rows[a] & A != A or G.rows[a] & (B | C):
        return None, "a must be outside V(S), complete to A and anticomplete to B and C"
    D = compute_D(G, S, a)
    Z = compute_Z(G, S, a, D)
    if not is_clique_mask(G, Z):
        return None, "Z is not a clique"
    doors = {}
    for z in bits(Z):
        p = find_backdoor(G, S, D, z)
        if p is None:
            return None, f"no backdoor for {z}"
        doors[z] = p
    return CompletedStrip(S, a, as_set(D), as_set(Z), doors), ""


def check_completed_strip(G: Graph, cs: CompletedStrip) -> BulletVerdict:
    """Re-derive every part of a completed strip.

    Bullets: 1 S is a proper strip; 2 the apex sees A and nothing else of
    V(S); 3 D matches its definition; 4 Z matches its definition; 5 Z is a
    clique; 6 each stored backdoor is valid.
    """
    S = cs.strip
    A, B, C = S.masks
    if not S.proper:
        return BulletVerdict(False, 1, "strip is not proper", sorted(S.A & S.B))
    missing = (A | B | C) & ~rung_cover(G, A, B, C)
    if missing:
        return BulletVerdict(False, 1, "vertices on no rung", sorted(bits(missing)))
    a = cs.a
    if a in S.vertices or G.rows[a] & A != A or G.rows[a] & (B | C):
        return BulletVerdict(False, 2, "apex must be complete to A and anticomplete to B and C", a)
    D = compute_D(G, S, a)
    if mask_of(cs.D) != D:
        return BulletVerdict(False, 3, "D differs from its definition", {"expected": sorted(bits(D)), "given": sorted(cs.D)})
    Z = compute_Z(G, S, a, D)
    if mask_of(cs.Z) != Z:
        return BulletVerdict(False, 4, "Z differs from its definition", {"expected": sorted(bits(Z)), "given": sorted(cs.Z)})
    if not is_clique_mask(G, Z):
        pair = next((x, y) for x, y in itertools.combinations(bits(Z), 2) if not G.has_edge(x, y))
        return BulletVerdict(False, 5, "Z is not a clique", pair)
    for z in sorted(cs.Z):
        p = cs.backdoors.get(z)
        if p is None or not is_backdoor(G, S, D, z, p):
            return BulletVerdict(False, 6, "missing or invalid backdoor", {"z": z, "path": p})
    return OK


def three_outsiders(G: Graph, cs: CompletedStrip) -> int:
    """Vertices outside A, C and D with no neighbour there."""
    core = mask_of(cs.core)
    return G.full & ~core & ~G.nbhd(core)


def check_striptobip(G: Graph, cs: CompletedStrip, assume_even_hole_free: bool = False) -> CheckResult:
    """Some vertex of A, C or D is bisimplicial, given a valid completed
    strip with at least three vertices away from that set."""
    from ..bisimplicial import bisimplicial_mask
    from ..detectors import find_even_hole

    verdict = check_completed_strip(G, cs)
    if not verdict.ok:
        return inapplicable(f"not a completed strip: {verdict.reason}")
    far = three_outsiders(G, cs)
    if far.bit_count() < 3:
        return inapplicable("fewer than three vertices away from A, C and D")
    if not assume_even_hole_free and find_even_hole(G) is not None:
        return inapplicable("G has an even hole")
    core = mask_of(cs.core)
    hit = bisimplicial_mask(G) & core
    if hit:
        return passed(witness=min(bits(hit)), info={"bisimplicial": sorted(bits(hit))})
    return failed(witness={"core": sorted(bits(core))}, detail="no vertex of A, C or D is bisimplicial")
