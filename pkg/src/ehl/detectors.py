"""Detectors for holes, thetas, pyramids, near-prisms, wheels and extended
near-prisms, each returning a certificate that :func:`verify_certificate`
re-checks from the graph alone.

Every detector except the hole search works the same way: fix a *frame*
(the branch vertices of the structure and how they are wired), then route
the constituent paths between branch vertices.  A path's interior must
avoid the closed neighbourhoods of all branch vertices other than its own
ends, and the interiors of different paths must be disjoint and
anticomplete.  Under those rules the union of the paths is automatically
an induced copy of the structure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .graph import (
    Budget,
    Graph,
    GraphError,
    all_induced_paths,
    bits,
    enumerate_holes,
    holes_of_length,
    is_chordal,
    is_hole,
    mask_of,
)

# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Hole:
    cycle: tuple[int, ...]
    claim_even: bool = False
    kind = "hole"

    @property
    def span(self) -> tuple[int, ...]:
        return tuple(sorted(self.cycle))

    def expected_edges(self) -> set[tuple[int, int]]:
        return _cycle_edges(self.cycle)

    def to_json(self) -> dict:
        return _doc(self.kind, self.cycle, [], {"length": len(self.cycle), "claim_even": self.claim_even})


@dataclass(frozen=True)
class Theta:
    s: int
    t: int
    paths: tuple[tuple[int, ...], ...]
    kind = "theta"

    @property
    def span(self) -> tuple[int, ...]:
        return _span(self.paths)

    def expected_edges(self) -> set[tuple[int, int]]:
        return _path_edges(self.paths)

    def to_json(self) -> dict:
        return _doc(self.kind, (self.s, self.t), self.paths, {})


@dataclass(frozen=True)
class Pyramid:
    apex: int
    base: tuple[int, int, int]
    paths: tuple[tuple[int, ...], ...]  # paths[i] runs from the apex to base[i]
    kind = "pyramid"

    @property
    def short(self) -> bool:
        return any(len(p) == 2 for p in self.paths)

    @property
    def span(self) -> tuple[int, ...]:
        return _span(self.paths)

    def expected_edges(self) -> set[tuple[int, int]]:
        return _path_edges(self.paths) | _cycle_edges(self.base)

    def to_json(self) -> dict:
        return _doc(self.kind, (self.apex,) + self.base, self.paths, {"short": self.short})


@dataclass(frozen=True)
class NearPrism:
    a: tuple[int, int, int]
    b: tuple[int, int, int]
    paths: tuple[tuple[int, ...], ...]  # paths[i] runs from a[i] to b[i]; paths[2] == (c,) when a[2] == b[2]
    kind = "near-prism"

    @property
    def prism(self) -> bool:
        return self.a[2] != self.b[2]

    @property
    def span(self) -> tuple[int, ...]:
        return _span(self.paths + (self.a, self.b))

    def expected_edges(self) -> set[tuple[int, int]]:
        return _path_edges(self.paths) | _cycle_edges(self.a) | _cycle_edges(self.b)

    def to_json(self) -> dict:
        return _doc(self.kind, self.a + self.b, self.paths, {"prism": self.prism})


@dataclass(frozen=True)
class Wheel:
    centre: int
    hole: tuple[int, ...]
    spokes: tuple[int, ...]
    claim_even: bool = False
    kind = "wheel"

    @property
    def k(self) -> int:
        return len(self.spokes)

    @property
    def even(self) -> bool:
        return self.k % 2 == 0

    @property
    def span(self) -> tuple[int, ...]:
        return tuple(sorted(self.hole + (self.centre,)))

    def expected_edges(self) -> set[tuple[int, int]]:
        return _cycle_edges(self.hole) | {_e(self.centre, s) for s in self.spokes}

    def to_json(self) -> dict:
        return _doc(self.kind, (self.centre,), [self.hole],
                    {"spokes": list(self.spokes), "k": self.k, "claim_even": self.claim_even})


@dataclass(frozen=True)
class ExtendedNearPrism:
    a: tuple[int, int, int]
    b: tuple[int, int, int]
    paths: tuple[tuple[int, ...], ...]
    cross_edge: tuple[int, int]  # first end lies inside paths[0], second inside paths[1]
    kind = "extended-near-prism"

    @property
    def nearprism(self) -> NearPrism:
        return NearPrism(self.a, self.b, self.paths)

    @property
    def prism(self) -> bool:
        return self.a[2] != self.b[2]

    @property
    def span(self) -> tuple[int, ...]:
        return self.nearprism.span

    def expected_edges(self) -> set[tuple[int, int]]:
        return self.nearprism.expected_edges() | {_e(*self.cross_edge)}

    def to_json(self) -> dict:
        return _doc(self.kind, self.a + self.b, self.paths,
                    {"prism": self.prism, "cross_edge": list(self.cross_edge)})


Certificate = Hole | Theta | Pyramid | NearPrism | Wheel | ExtendedNearPrism


def _e(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _cycle_edges(cycle: Sequence[int]) -> set[tuple[int, int]]:
    return {_e(cycle[i - 1], cycle[i]) for i in range(len(cycle))}


def _path_edges(paths: Iterable[Sequence[int]]) -> set[tuple[int, int]]:
    return {_e(p[i], p[i + 1]) for p in paths for i in range(len(p) - 1)}


def _span(groups: Iterable[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sorted({v for g in groups for v in g}))


def _doc(kind: str, vertices: Sequence[int], paths: Iterable[Sequence[int]], meta: dict) -> dict:
    return {"kind": kind, "vertices": list(vertices), "paths": [list(p) for p in paths], "meta": meta}


def certificate_to_json(c: Certificate) -> str:
    return json.dumps(c.to_json(), sort_keys=True)


def certificate_from_json(doc: str | dict) -> Certificate:
    d: dict[str, Any] = json.loads(doc) if isinstance(doc, str) else doc
    kind = d["kind"]
    vs = tuple(d["vertices"])
    paths = tuple(tuple(p) for p in d["paths"])
    meta = d.get("meta", {})
    if kind == "hole":
        return Hole(vs, bool(meta.get("claim_even", False)))
    if kind == "theta":
        return Theta(vs[0], vs[1], paths)
    if kind == "pyramid":
        return Pyramid(vs[0], vs[1:4], paths)
    if kind == "near-prism":
        return NearPrism(vs[:3], vs[3:6], paths)
    if kind == "wheel":
        return Wheel(vs[0], paths[0], tuple(meta["spokes"]), bool(meta.get("claim_even", False)))
    if kind == "extended-near-prism":
        return ExtendedNearPrism(vs[:3], vs[3:6], paths, tuple(meta["cross_edge"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------
# verification


def verify_certificate(G: Graph, c: Certificate) -> bool:
    """Re-derive every clause of the structure's definition from ``G``."""
    try:
        span = c.span
        if any(not 0 <= v < G.n for v in span):
            return False
        if not _structure_ok(G, c):
            return False
    except (TypeError, ValueError, IndexError):
        return False
    # The structure is an induced subgraph: G restricted to its vertex set
    # must have exactly the edges the definition prescribes.
    m = mask_of(span)
    return set(G.edges_within(m)) == c.expected_edges()


def _distinct(seq: Sequence[int]) -> bool:
    return len(set(seq)) == len(seq)


def _paths_shape(paths, ends) -> bool:
    if len(paths) != len(ends):
        return False
    for p, (u, v) in zip(paths, ends):
        if not p or not _distinct(p) or p[0] != u or p[-1] != v:
            return False
    return True


def _pairwise_disjoint(groups: Sequence[Sequence[int]]) -> bool:
    seen: set[int] = set()
    for g in groups:
        if seen & set(g):
            return False
        seen |= set(g)
    return True


def _structure_ok(G: Graph, c: Certificate) -> bool:
    if isinstance(c, Hole):
        cyc = c.cycle
        if len(cyc) < 4 or not _distinct(cyc):
            return False
        if c.claim_even and len(cyc) % 2:
            return False
        return is_hole(G, cyc)
    if isinstance(c, Theta):
        if c.s == c.t or not _paths_shape(c.paths, [(c.s, c.t)] * 3):
            return False
        if any(len(p) < 3 for p in c.paths):
            return False
        return _pairwise_disjoint([p[1:-1] for p in c.paths]) and _pairwise_disjoint([(c.s, c.t), _span(p[1:-1] for p in c.paths)])
    if isinstance(c, Pyramid):
        verts = (c.apex,) + tuple(c.base)
        if len(c.base) != 3 or not _distinct(verts):
            return False
        if not _paths_shape(c.paths, [(c.apex, b) for b in c.base]):
            return False
        if sum(len(p) >= 3 for p in c.paths) < 2:
            return False
        return _pairwise_disjoint([p[1:] for p in c.paths])
    if isinstance(c, (NearPrism, ExtendedNearPrism)):
        a, b, paths = tuple(c.a), tuple(c.b), c.paths
        if len(a) != 3 or len(b) != 3 or not _distinct(a) or not _distinct(b):
            return False
        if set(a) & set(b) != {a[2]} & {b[2]}:
            return False
        if not _paths_shape(paths, list(zip(a, b))):
            return False
        if a[2] == b[2] and len(paths[2]) != 1:
            return False
        if not _pairwise_disjoint(paths):
            return False
        if isinstance(c, ExtendedNearPrism):
            x, y = c.cross_edge
            if x not in paths[0][1:-1] or y not in paths[1][1:-1]:
                return False
        return True
    if isinstance(c, Wheel):
        if not is_hole(G, c.hole) or c.centre in c.hole:
            return False
        spokes = set(c.spokes)
        if len(spokes) != len(c.spokes) or not spokes <= set(c.hole) or len(spokes) < 3:
            return False
        if c.claim_even and len(spokes) % 2:
            return False
        if len(spokes) == 3:
            hm = mask_of(spokes)
            if any(G.rows[s] & hm for s in spokes):
                return False
        return True
    return False


# ---------------------------------------------------------------------------
# path routing


class _Cand:
    __slots__ = ("path", "inner", "reach")

    def __init__(self, rows, path):
        self.path = path
        inner = 0
        reach = 0
        for w in path[1:-1]:
            inner |= 1 << w
            reach |= rows[w] | 1 << w
        self.inner = inner
        self.reach = reach


def _candidates(G: Graph, u: int, v: int, allowed: int, bud: Budget) -> list[_Cand]:
    paths = all_induced_paths(G.rows, u, v, allowed, bud)
    paths.sort(key=lambda p: (len(p), p))
    return [_Cand(G.rows, p) for p in paths]


def _route(G: Graph, requests: Sequence[tuple[int, int]], branch: int, bud: Budget,
           increasing: bool = False) -> list[tuple[int, ...]] | None:
    """Choose one path per request, interiors pairwise disjoint and anticomplete.

    Each interior avoids the closed neighbourhood of every branch vertex
    other than the ends of its own request.  With ``increasing`` the
    requests are interchangeable and only choices with strictly increasing
    candidate index are tried (used for the symmetric theta).
    """
    rows = G.rows
    full = G.full & ~branch
    lists = []
    for u, v in requests:
        others = branch & ~(1 << u | 1 << v)
        shadow = others
        for w in bits(others):
            shadow |= rows[w]
        cands = _candidates(G, u, v, full & ~shadow, bud)
        if not cands:
            return None
        lists.append(cands)
    k = len(requests)
    chosen: list[_Cand] = []

    def go(i: int, blocked: int, start: int) -> bool:
        if i == k:
            return True
        lst = lists[i]
        for j in range(start if increasing else 0, len(lst)):
            bud.charge()
            c = lst[j]
            if c.inner & blocked:
                continue
            chosen.append(c)
            if go(i + 1, blocked | c.reach, j + 1):
                return True
            chosen.pop()
        return False

    if go(0, 0, 0):
        return [c.path for c in chosen]
    return None


def _triangles(G: Graph, within: int | None = None) -> list[tuple[int, int, int]]:
    rows = G.rows
    m = G.full if within is None else within
    out = []
    for x in bits(m):
        for y in bits(rows[x] & m & ~((2 << x) - 1)):
            for z in bits(rows[x] & rows[y] & m & ~((2 << y) - 1)):
                out.append((x, y, z))
    return out


def _frame_edges_ok(G: Graph, verts: Sequence[int], allowed: set[tuple[int, int]],
                    required: set[tuple[int, int]]) -> bool:
    """Edges among the branch vertices must include ``required`` and lie in ``allowed``."""
    m = mask_of(verts)
    present = set(G.edges_within(m))
    return required <= present <= allowed


# ---------------------------------------------------------------------------
# detectors


def find_even_hole(G: Graph, budget: Budget | int | None = None) -> Hole | None:
    """Shortest even hole, lexicographically least among the shortest."""
    bud = Budget.coerce(budget)
    if G.n < 4 or is_chordal(G):
        return None
    for length in range(4, G.n + 1, 2):
        hit = holes_of_length(G, length, bud, first_only=True)
        if hit:
            return Hole(hit[0], claim_even=True)
    return None


def find_hole(G: Graph, parity: int | None = None, budget: Budget | int | None = None) -> Hole | None:
    """Shortest hole of the given parity (0 even, 1 odd, None any)."""
    for cyc in enumerate_holes(G, parity, budget):
        return Hole(cyc, claim_even=parity == 0)
    return None


def is_even_hole_free(G: Graph) -> bool:
    return find_even_hole(G) is None


def find_theta(G: Graph, budget: Budget | int | None = None) -> Theta | None:
    bud = Budget.coerce(budget)
    if G.n < 5 or is_chordal(G):  # a theta contains a hole
        return None
    rows = G.rows
    for s in range(G.n):
        if rows[s].bit_count() < 3:
            continue
        for t in range(s + 1, G.n):
            if rows[s] >> t & 1 or rows[t].bit_count() < 3:
                continue
            branch = 1 << s | 1 << t
            paths = _route(G, [(s, t)] * 3, branch, bud, increasing=True)
            if paths:
                return Theta(s, t, tuple(paths))
    return None


def find_pyramid(G: Graph, apex: int | None = None, short_only: bool = False,
                 budget: Budget | int | None = None) -> Pyramid | None:
    bud = Budget.coerce(budget)
    if apex is not None and not 0 <= apex < G.n:
        raise GraphError(f"apex {apex} out of range")
    if G.n < 5 or is_chordal(G):  # two long constituent paths close a hole through the base
        return None
    rows = G.rows
    tris = _triangles(G)
    apexes = range(G.n) if apex is None else (apex,)
    for a in apexes:
        for tri in tris:
            tm = mask_of(tri)
            if tm >> a & 1:
                continue
            hits = (rows[a] & tm).bit_count()
            if hits > 1 or (short_only and hits != 1):
                continue
            branch = tm | 1 << a
            paths = _route(G, [(a, b) for b in tri], branch, bud)
            if paths:
                return Pyramid(a, tri, tuple(paths))
    return None


def _near_prism_frames(G: Graph, tris: list[tuple[int, int, int]], avoid: int = 0):
    """Yield (a, b) base triples: prisms first, then the shared-vertex case."""
    rows = G.rows
    usable = [t for t in tris if not mask_of(t) & avoid]
    for i, t1 in enumerate(usable):
        m1 = mask_of(t1)
        for t2 in usable[i + 1:]:
            m2 = mask_of(t2)
            if m1 & m2:
                continue
            # every cross edge between the triangles must be a direct R_i
            cross = sum((rows[x] & m2).bit_count() for x in t1)
            if cross > 3:
                continue
            for perm in itertools.permutations(t2):
                if all(rows[t1[i]] & m2 & ~(1 << perm[i]) == 0 for i in range(3)):
                    yield t1, perm
    for i, t1 in enumerate(usable):
        m1 = mask_of(t1)
        for t2 in usable[i + 1:]:
            shared = m1 & mask_of(t2)
            if shared.bit_count() != 1:
                continue
            c = shared.bit_length() - 1
            a1, a2 = [x for x in t1 if x != c]
            rest = [x for x in t2 if x != c]
            for b1, b2 in (rest, rest[::-1]):
                if rows[a1] & (1 << b2) or rows[a2] & (1 << b1):
                    continue
                yield (a1, a2, c), (b1, b2, c)


def find_near_prism(G: Graph, budget: Budget | int | None = None) -> NearPrism | None:
    bud = Budget.coerce(budget)
    if G.n < 5 or is_chordal(G):  # R_1, R_2 and the base edges form a hole
        return None
    for a, b in _near_prism_frames(G, _triangles(G)):
        branch = mask_of(a + b)
        if a[2] == b[2]:
            paths = _route(G, [(a[0], b[0]), (a[1], b[1])], branch, bud)
            if paths:
                return NearPrism(a, b, tuple(paths) + ((a[2],),))
        else:
            paths = _route(G, list(zip(a, b)), branch, bud)
            if paths:
                return NearPrism(a, b, tuple(paths))
    return None


def find_wheel(G: Graph, even_only: bool = False, budget: Budget | int | None = None) -> Wheel | None:
    bud = Budget.coerce(budget)
    if G.n < 5 or is_chordal(G):
        return None
    rows = G.rows
    for hole in enumerate_holes(G, None, bud):
        hm = mask_of(hole)
        for v in range(G.n):
            if hm >> v & 1:
                continue
            sp = rows[v] & hm
            k = sp.bit_count()
            if k < 3 or (even_only and k % 2):
                continue
            if k == 3 and any(rows[s] & sp for s in bits(sp)):
                continue
            return Wheel(v, hole, tuple(s for s in hole if sp >> s & 1), claim_even=even_only)
    return None


def find_extended_near_prism(G: Graph, cross_edge: tuple[int, int] | None = None, end: int | None = None,
                             budget: Budget | int | None = None) -> ExtendedNearPrism | None:
    """Extended near-prism, optionally with a fixed cross-edge or a fixed cross-edge end."""
    bud = Budget.coerce(budget)
    if cross_edge is not None:
        x, y = cross_edge
        if not (0 <= x < G.n and 0 <= y < G.n) or not G.has_edge(x, y):
            raise GraphError(f"cross edge {cross_edge} is not an edge of the graph")
        pairs: Iterable[tuple[int, int]] = [(x, y)]
    elif end is not None:
        if not 0 <= end < G.n:
            raise GraphError(f"vertex {end} out of range")
        pairs = [(end, y) for y in G.neighbours(end)]
    else:
        pairs = G.edges()
    if G.n < 7 or is_chordal(G):  # the shared-vertex case needs 7 vertices
        return None
    rows = G.rows
    tris = _triangles(G)
    for x, y in pairs:
        xy = 1 << x | 1 << y
        # a triangle may hold at most one neighbour of x and one of y
        local = [t for t in tris if not mask_of(t) & xy
                 and (rows[x] & mask_of(t)).bit_count() <= 1 and (rows[y] & mask_of(t)).bit_count() <= 1]
        for a, b in _near_prism_frames(G, local):
            # the cross-edge may join any two of the constituent paths
            roles = _PRISM_ROLES if a[2] != b[2] else _SHARED_ROLES
            for r in roles:
                hit = _route_extended(G, tuple(a[i] for i in r), tuple(b[i] for i in r), x, y, bud)
                if hit:
                    return hit
    return None


_PRISM_ROLES = tuple(itertools.permutations(range(3)))
_SHARED_ROLES = ((0, 1, 2), (1, 0, 2))


def _route_extended(G: Graph, a, b, x: int, y: int, bud: Budget) -> ExtendedNearPrism | None:
    rows = G.rows
    # x may touch only a1/b1 among the triangle vertices, y only a2/b2
    tm = mask_of(a + b)
    if rows[a[0]] >> b[0] & 1 or rows[a[1]] >> b[1] & 1:
        return None
    if rows[x] & tm & ~(1 << a[0] | 1 << b[0]) or rows[y] & tm & ~(1 << a[1] | 1 << b[1]):
        return None
    branch = tm | 1 << x | 1 << y
    reqs = [(a[0], x), (x, b[0]), (a[1], y), (y, b[1])]
    if a[2] != b[2]:
        reqs.append((a[2], b[2]))
    paths = _route(G, reqs, branch, bud)
    if not paths:
        return None
    r1 = paths[0] + paths[1][1:]
    r2 = paths[2] + paths[3][1:]
    r3 = paths[4] if a[2] != b[2] else (a[2],)
    return ExtendedNearPrism(a, b, (r1, r2, r3), (x, y))


DETECTORS = {
    "even-hole": lambda G, **kw: find_even_hole(G, **kw),
    "theta": lambda G, **kw: find_theta(G, **kw),
    "pyramid": lambda G, **kw: find_pyramid(G, **kw),
    "near-prism": lambda G, **kw: find_near_prism(G, **kw),
    "wheel": lambda G, **kw: find_wheel(G, **kw),
    "even-wheel": lambda G, **kw: find_wheel(G, even_only=True, **kw),
    "extended-near-prism": lambda G, **kw: find_extended_near_prism(G, **kw),
}
