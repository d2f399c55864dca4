"""Pyramid strip systems around an apex, and the theorems describing how
the rest of the graph attaches to a maximal one."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..graph import (Budget, BudgetExhausted, Graph, VertexLike, as_mask, as_set, bits, components_mask,
                     is_clique_mask, mask_of)
from ..results import CheckResult, failed, passed
from .core import OK, BulletVerdict, Strip, rung_cover
from .tree import LOCALLY_MAXIMAL, OPTIMAL, UNKNOWN

DEFAULT_SEARCH_BUDGET = 2_000_000


@dataclass(frozen=True, eq=False)
class PyramidStripSystem:
    apex: int
    strips: tuple[Strip, ...]
    maximality: str = UNKNOWN

    def __post_init__(self) -> None:
        object.__setattr__(self, "strips", tuple(self.strips))

    @property
    def k(self) -> int:
        return len(self.strips)

    @property
    def caveat(self) -> bool:
        return self.maximality != OPTIMAL

    @property
    def vertices(self) -> frozenset[int]:
        out = frozenset({self.apex})
        for s in self.strips:
            out |= s.vertices
        return out

    def mask(self) -> int:
        return mask_of(self.vertices)

    def side(self, name: str) -> int:
        out = 0
        for s in self.strips:
            out |= mask_of(getattr(s, name))
        return out

    def to_json(self) -> dict:
        return {"apex": self.apex, "strips": [s.to_json() for s in self.strips], "maximality": self.maximality}


def validate_pyramid_system(G: Graph, S: PyramidStripSystem) -> BulletVerdict:
    """Bullet 0 covers the shape (at least three proper, pairwise disjoint
    strips); bullets 1 to 3 are the three definitional bullets."""
    a = S.apex
    if S.k < 3:
        return BulletVerdict(False, 0, "fewer than three strips", S.k)
    seen = 0
    for i, s in enumerate(S.strips):
        A, B, C = s.masks
        if (A | B | C) >> G.n:
            return BulletVerdict(False, 0, "vertex out of range", i)
        if not s.proper:
            return BulletVerdict(False, 0, "strip is not proper", i)
        if (A | B | C) & seen:
            return BulletVerdict(False, 0, "strips overlap", {"strip": i, "vertices": sorted(bits((A | B | C) & seen))})
        seen |= A | B | C
        missing = (A | B | C) & ~rung_cover(G, A, B, C)
        if missing:
            return BulletVerdict(False, 0, "vertices on no rung", {"strip": i, "vertices": sorted(bits(missing))})
    for i, j in itertools.combinations(range(S.k), 2):
        si, sj = S.strips[i], S.strips[j]
        vi, vj = mask_of(si.vertices), mask_of(sj.vertices)
        bi, bj = mask_of(si.B), mask_of(sj.B)
        for x in bits(vi):
            want = bj if bi >> x & 1 else 0
            if G.rows[x] & vj != want:
                return BulletVerdict(False, 1, "edges between strips are not exactly B complete to B",
                                     {"strips": [i, j], "vertex": x})
    if seen >> a & 1:
        return BulletVerdict(False, 2, "apex lies in a strip", a)
    for i, s in enumerate(S.strips):
        A, B, C = s.masks
        if G.rows[a] & A != A:
            return BulletVerdict(False, 3, "apex not complete to A", {"strip": i, "vertices": sorted(bits(A & ~G.rows[a]))})
        if G.rows[a] & (B | C):
            return BulletVerdict(False, 3, "apex has a neighbour in B or C", {"strip": i, "vertices": sorted(bits(G.rows[a] & (B | C)))})
    return OK


def is_indecomposable(G: Graph, S: PyramidStripSystem) -> bool:
    return all(len(components_mask(G, mask_of(s.A | s.C))) == 1 for s in S.strips)


def attachments(G: Graph, S: PyramidStripSystem, F: VertexLike) -> frozenset[int]:
    """Members of V(S) (apex included) with a neighbour in F."""
    f = as_mask(G, F)
    vs = S.mask()
    if f & vs:
        raise ValueError("F must be disjoint from V(S)")
    return as_set(G.nbhd(f) & vs)


def outside_components(G: Graph, S: PyramidStripSystem) -> list[int]:
    """Components of G minus V(S) and N[a]."""
    return components_mask(G, G.full & ~S.mask() & ~G.closed(S.apex))


def attachment_unions(G: Graph, S: PyramidStripSystem) -> list[int]:
    """D_1..D_k, recomputed from the definition on every call."""
    comps = outside_components(G, S)
    out = []
    for s in S.strips:
        ac = mask_of(s.A | s.C)
        d = 0
        for F in comps:
            if G.nbhd(F) & ac:
                d |= F
        out.append(d)
    return out


def pyramid_system_from_paths(a: int, paths: Iterable[tuple[int, ...]], maximality: str = UNKNOWN) -> PyramidStripSystem:
    """One single-rung strip per constituent path a-...-b_i, each of length at least two."""
    strips = []
    for p in paths:
        p = tuple(p)
        if p[0] != a:
            p = p[::-1]
        if p[0] != a or len(p) < 3:
            raise ValueError("each path must start at the apex and have length at least two")
        strips.append(Strip({p[1]}, {p[-1]}, set(p[2:-1])))
    return PyramidStripSystem(a, tuple(strips), maximality)


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True, eq=False)
class PyramidSearchResult:
    system: Optional[PyramidStripSystem]
    maximality: str
    nodes: int
    reason: str = ""
    report: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "system": None if self.system is None else self.system.to_json(),
            "maximality": self.maximality,
            "nodes": self.nodes,
            "reason": self.reason,
            "report": self.report,
        }


_A, _B, _C = 0, 1, 2


class _PyramidSearch:
    """Branch and bound over labels ``(strip, role)``; None leaves a vertex out."""

    def __init__(self, G: Graph, a: int, bud: Budget):
        self.G, self.a, self.bud = G, a, bud
        self.verts = [v for v in range(G.n) if v != a]
        self.best: Optional[dict[int, tuple[int, int]]] = None
        self.best_size = -1
        na = G.rows[a]
        self.cap = len([v for v in self.verts if na >> v & 1])

    def roles(self, v: int) -> tuple[int, ...]:
        return (_A,) if self.G.rows[self.a] >> v & 1 else (_B, _C)

    def compatible(self, x, lx, y, ly) -> bool:
        if lx[0] == ly[0]:
            return True
        return self.G.has_edge(x, y) == (lx[1] == _B and ly[1] == _B)

    def feasible(self, assign) -> bool:
        G = self.G
        k = 1 + max((lab[0] for lab in assign.values()), default=-1)
        if k < 3:
            return False
        for i in range(k):
            A = B = C = 0
            for x, (j, r) in assign.items():
                if j == i:
                    if r == _A:
                        A |= 1 << x
                    elif r == _B:
                        B |= 1 << x
                    else:
                        C |= 1 << x
            if not A or not B:
                return False
            if len(components_mask(G, A | C)) != 1:
                return False
            if rung_cover(G, A, B, C) != A | B | C:
                return False
        return True

    def run(self, floor: int) -> None:
        self.best_size = floor
        order = sorted(self.verts, key=lambda v: (-(self.G.rows[self.a] >> v & 1), -self.G.degree(v), v))
        doms = {}
        for v in order:
            doms[v] = [(i, r) for i in range(self.cap) for r in self.roles(v)]
        self._dfs(order, 0, {}, doms, 0)

    def _dfs(self, order, k, assign, doms, used) -> None:
        self.bud.charge()
        if len(assign) + sum(1 for v in order[k:] if doms[v]) <= self.best_size:
            return
        if k == len(order):
            if self.feasible(assign):
                self.best = dict(assign)
                self.best_size = len(assign)
            return
        v = order[k]
        for lab in doms[v]:
            if lab[0] > used:
                continue
            newdoms = dict(doms)
            for w in order[k + 1:]:
                if doms[w]:
                    newdoms[w] = [l for l in doms[w] if self.compatible(v, lab, w, l)]
            assign[v] = lab
            self._dfs(order, k + 1, assign, newdoms, max(used, lab[0] + 1))
            del assign[v]
        self._dfs(order, k + 1, assign, doms, used)


def _system_of(a: int, assign: dict[int, tuple[int, int]], maximality: str) -> PyramidStripSystem:
    k = 1 + max(lab[0] for lab in assign.values())
    parts = [([], [], []) for _ in range(k)]
    for x, (i, r) in assign.items():
        parts[i][r].append(x)
    strips = sorted((Strip(*p) for p in parts), key=lambda s: min(s.vertices))
    return PyramidStripSystem(a, tuple(strips), maximality)


def _assignment(S: PyramidStripSystem) -> dict[int, tuple[int, int]]:
    out = {}
    for i, s in enumerate(S.strips):
        for x in s.A:
            out[x] = (i, _A)
        for x in s.B:
            out[x] = (i, _B)
        for x in s.C:
            out[x] = (i, _C)
    return out


def pyramid_hypotheses(G: Graph, a: int) -> Optional[str]:
    """None when a is splendid, ends no cross-edge of an extended
    near-prism, and is the apex of a pyramid; otherwise the failed one."""
    from ..cutsets import is_splendid
    from ..detectors import find_extended_near_prism, find_pyramid

    if not is_splendid(G, a).ok:
        return "a is not splendid"
    if find_extended_near_prism(G, end=a) is not None:
        return "a is an end of the cross-edge of an extended near-prism"
    if find_pyramid(G, apex=a) is None:
        return "no pyramid has apex a"
    return None


def search_pyramid_strip_system(G: Graph, a: int, budget: Budget | int | None = None,
                                require_hypotheses: bool = True) -> PyramidSearchResult:
    """An indecomposable pyramid strip system with apex a and V(S) of
    maximum size.

    The search is seeded with a pyramid at a and is exhaustive within the
    budget, in which case the result is certified ``optimal``; otherwise
    the best system found is grown by one- and two-vertex additions and
    labelled ``locally-maximal``.
    """
    from ..detectors import find_pyramid

    if require_hypotheses:
        why = pyramid_hypotheses(G, a)
        if why is not None:
            return PyramidSearchResult(None, UNKNOWN, 0, why)
    pyr = find_pyramid(G, apex=a)
    if pyr is None:
        return PyramidSearchResult(None, UNKNOWN, 0, "no pyramid has apex a")
    if any(len(p) < 3 for p in pyr.paths):
        return PyramidSearchResult(None, UNKNOWN, 0, "only short pyramids have apex a")
    seed = pyramid_system_from_paths(a, pyr.paths)
    bud = Budget.coerce(DEFAULT_SEARCH_BUDGET if budget is None else budget)
    search = _PyramidSearch(G, a, bud)
    floor = len(seed.vertices) - 1
    try:
        search.run(floor)
    except BudgetExhausted:
        best = seed if search.best is None else _system_of(a, search.best, UNKNOWN)
        grown = grow_pyramid_locally(G, best)
        return PyramidSearchResult(grown, LOCALLY_MAXIMAL, bud.spent, report={"budget": "exhausted",
                                   "moves": ["add one vertex", "add two vertices"]})
    best = seed if search.best is None else _system_of(a, search.best, UNKNOWN)
    S = PyramidStripSystem(a, best.strips, OPTIMAL)
    return PyramidSearchResult(S, OPTIMAL, bud.spent, report={"k": S.k})


def single_vertex_extensions(G: Graph, S: PyramidStripSystem) -> Iterable[PyramidStripSystem]:
    """Every system obtained by adding one outside vertex to some strip
    (in the role its adjacency to the apex allows) or as part of a new strip."""
    base = _assignment(S)
    used = S.mask()
    for v in range(G.n):
        if used >> v & 1:
            continue
        roles = (_A,) if G.rows[S.apex] >> v & 1 else (_B, _C)
        for i in range(S.k):
            for r in roles:
                assign = dict(base)
                assign[v] = (i, r)
                yield _system_of(S.apex, assign, UNKNOWN)


def _ok(G: Graph, S: PyramidStripSystem) -> bool:
    return bool(validate_pyramid_system(G, S)) and is_indecomposable(G, S)


def grow_pyramid_locally(G: Graph, S: PyramidStripSystem) -> PyramidStripSystem:
    current = S
    while True:
        nxt = next((c for c in single_vertex_extensions(G, current) if _ok(G, c)), None)
        if nxt is None:
            for c in single_vertex_extensions(G, current):
                nxt = next((c2 for c2 in single_vertex_extensions(G, c) if _ok(G, c2)), None)
                if nxt is not None:
                    break
        if nxt is None:
            return PyramidStripSystem(S.apex, current.strips, LOCALLY_MAXIMAL)
        current = nxt


# ---------------------------------------------------------------------------
# theorem checks


def check_pyramid_attachment_theorem(G: Graph, S: PyramidStripSystem) -> CheckResult:
    """Each component outside V(S) and N[a] attaches either to a nonempty
    part of the B sides only, or inside one strip meeting its B or C."""
    B = S.side("B")
    checked = 0
    for F in outside_components(G, S):
        checked += 1
        att = G.nbhd(F) & S.mask()
        if att and att & ~B == 0:
            continue
        good = False
        for s in S.strips:
            vi = mask_of(s.vertices)
            if att & ~vi == 0 and att & mask_of(s.B | s.C):
                good = True
                break
        if not good:
            return failed(witness={"F": sorted(bits(F)), "attachments": sorted(bits(att))},
                          detail="component attaches in neither allowed way", caveat=S.caveat,
                          info={"components": checked})
    return passed(caveat=S.caveat, info={"components": checked})


@dataclass(frozen=True)
class ApexType:
    kind: str
    index: Optional[int] = None
    private_path: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index,
                "private_path": None if self.private_path is None else list(self.private_path)}


ALPHA, ALPHA_PRIME, BETA, GAMMA, UNCLASSIFIED = "alpha", "alpha'", "beta", "gamma", "unclassified"


def _private_path(G: Graph, S: PyramidStripSystem, v: int, i: int) -> Optional[tuple[int, ...]]:
    """A shortest (hence induced) path from v whose other vertices avoid
    V(S) and N[a], whose interior is anticomplete to V(S), and whose far end
    q sees B, only B within V(S), and all or none of B minus B_i."""
    vs = S.mask()
    B = S.side("B")
    rest = B & ~mask_of(S.strips[i].B)
    region = G.full & ~vs & ~G.closed(S.apex)
    inner = 0
    ends = 0
    for x in bits(region):
        sx = G.rows[x] & vs
        if not sx:
            inner |= 1 << x
        if sx & B and not sx & ~B and (sx & rest in (0, rest)):
            ends |= 1 << x
    if not ends:
        return None
    # breadth-first search from v through inner vertices to any end
    parent = {v: None}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            nb = G.rows[x]
            for q in bits(nb & ends):
                if q not in parent:
                    path = [q, x]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return tuple(reversed(path))
            for y in bits(nb & inner):
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    return None


def classify_apex_neighbour(G: Graph, S: PyramidStripSystem, v: int) -> ApexType:
    """The first of the types alpha, alpha'_i, beta_i, gamma_i that v has,
    tested from their defining bullets."""
    if v == S.apex or not G.has_edge(v, S.apex) or S.mask() >> v & 1:
        raise ValueError("v must be a neighbour of the apex outside V(S)")
    row = G.rows[v]
    D = attachment_unions(G, S)
    parts = [tuple(mask_of(x) for x in (s.A, s.B, s.C)) for s in S.strips]
    k = S.k

    def complete_A(j):
        return row & parts[j][0] == parts[j][0]

    def sees_BC(j):
        return bool(row & (parts[j][1] | parts[j][2]))

    if all(sees_BC(j) or complete_A(j) for j in range(k)):
        return ApexType(ALPHA)
    for i in range(k):
        if row & D[i] and not sees_BC(i) and all(
                complete_A(j) and not row & (parts[j][1] | parts[j][2] | D[j]) for j in range(k) if j != i):
            return ApexType(ALPHA_PRIME, i)
    for i in range(k):
        if not row & (parts[i][0] | parts[i][1] | parts[i][2]) and all(sees_BC(j) for j in range(k) if j != i):
            return ApexType(BETA, i)
    for i in range(k):
        if not all(complete_A(j) for j in range(k) if j != i):
            continue
        if any(row & (parts[j][1] | parts[j][2] | D[j]) for j in range(k)):
            continue
        q = _private_path(G, S, v, i)
        if q is not None:
            return ApexType(GAMMA, i, q)
    return ApexType(UNCLASSIFIED)


def apex_outsiders(G: Graph, S: PyramidStripSystem) -> int:
    """N[a] minus V(S)."""
    return G.closed(S.apex) & ~S.mask()


def check_growstrips(G: Graph, S: PyramidStripSystem) -> CheckResult:
    types = {}
    for v in bits(apex_outsiders(G, S)):
        t = classify_apex_neighbour(G, S, v)
        types[v] = t.to_json()
        if t.kind == UNCLASSIFIED:
            return failed(witness={"vertex": v}, detail="apex neighbour has none of the four types",
                          caveat=S.caveat, info={"types": types})
    return passed(caveat=S.caveat, info={"types": types})


def check_apex_clique(G: Graph, S: PyramidStripSystem) -> CheckResult:
    X = apex_outsiders(G, S)
    if is_clique_mask(G, X):
        return passed(caveat=S.caveat, info={"set": sorted(bits(X))})
    pair = next((x, y) for x, y in itertools.combinations(bits(X), 2) if not G.has_edge(x, y))
    return failed(witness={"nonadjacent": pair}, detail="apex neighbours outside V(S) are not a clique",
                  caveat=S.caveat, info={"set": sorted(bits(X))})
