"""Tree strip systems with a cross-edge, locality, and the checks that
describe how the rest of a graph attaches to an optimal system.

Vertices of an abstract tree ``J`` are arbitrary ints; an edge of J is
always written as a sorted pair ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ..graph import (Budget, BudgetExhausted, Graph, GraphError, Tree, VertexLike, as_mask, as_set, bits,
                     components_mask, is_clique_mask, is_hole, mask_of)
from ..results import CheckResult, failed, inapplicable, passed
from .core import OK, BulletVerdict, rung_cover

OPTIMAL = "optimal"
LOCALLY_MAXIMAL = "locally-maximal"
UNKNOWN = "unknown"

DEFAULT_SEARCH_BUDGET = 2_000_000


def _e(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class JStripSystem:
    """Edge sets ``Me`` and hub sets ``Mu`` indexed by the edges and
    vertices of the tree ``J``."""

    J: Tree
    Me: Mapping[tuple[int, int], frozenset[int]]
    Mu: Mapping[int, frozenset[int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "Me", {_e(*k): frozenset(v) for k, v in self.Me.items()})
        object.__setattr__(self, "Mu", {k: frozenset(v) for k, v in self.Mu.items()})

    @property
    def vertices(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for s in self.Me.values():
            out |= s
        return out

    def strip_sets(self, e: tuple[int, int]) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        u, v = e
        me = self.Me[e]
        A = me & self.Mu.get(u, frozenset())
        B = me & self.Mu.get(v, frozenset())
        return A, B, me - A - B

    def to_json(self) -> dict:
        return {
            "J": [list(e) for e in self.J.edges],
            "Me": [[list(e), sorted(self.Me[e])] for e in sorted(self.Me)],
            "Mu": [[u, sorted(self.Mu[u])] for u in sorted(self.Mu)],
        }


@dataclass(frozen=True, eq=False)
class CrossEdgeContext:
    """A J-strip system with cross-edge ab and leaf partition (alpha, beta).

    ``maximality`` records what is known about optimality: ``optimal`` when
    certified, ``locally-maximal`` when only the local moves were
    exhausted, ``unknown`` otherwise.  Checkers attach a caveat to every
    result computed on a context that is not ``optimal``.
    """

    system: JStripSystem
    a: int
    b: int
    alpha: frozenset[int]
    beta: frozenset[int]
    maximality: str = UNKNOWN

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", frozenset(self.alpha))
        object.__setattr__(self, "beta", frozenset(self.beta))

    @property
    def J(self) -> Tree:
        return self.system.J

    @property
    def caveat(self) -> bool:
        return self.maximality != OPTIMAL

    def hub(self, u: int) -> frozenset[int]:
        return self.system.Mu.get(u, frozenset())

    def common_neighbours(self, G: Graph) -> frozenset[int]:
        return as_set(G.rows[self.a] & G.rows[self.b])

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "a": self.a,
            "b": self.b,
            "alpha": sorted(self.alpha),
            "beta": sorted(self.beta),
            "maximality": self.maximality,
        }


# ---------------------------------------------------------------------------
# extended tree line-graphs


class TreeConditionError(GraphError):
    """Raised when a tree and bipartition do not define an extended tree
    line-graph; ``code`` names the failed condition."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def tree_colouring(T: Tree) -> dict[int, int]:
    """The proper 2-colouring of T that gives its smallest vertex colour 0."""
    adj = T.adjacency()
    col = {T.verts[0]: 0}
    todo = [T.verts[0]]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in col:
                col[y] = col[x] ^ 1
                todo.append(y)
    return col


def leaf_condition_failure(T: Tree, side_of: Mapping[int, int]) -> Optional[tuple[int, int]]:
    """First (vertex, side) such that two components of T minus the vertex
    contain no leaf of that side, or None."""
    adj = T.adjacency()
    leaves = set(T.leaves())
    for v in T.verts:
        missing = [0, 0]
        for start in adj[v]:
            seen = {v, start}
            todo = [start]
            sides = set()
            while todo:
                x = todo.pop()
                if x in leaves:
                    sides.add(side_of[x])
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            for s in (0, 1):
                if s not in sides:
                    missing[s] += 1
        for s in (0, 1):
            if missing[s] > 1:
                return v, s
    return None


def valid_bipartitions(T: Tree) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Proper 2-colourings (A', B') of T that satisfy the leaf condition."""
    col = tree_colouring(T)
    out = []
    for flip in (0, 1):
        A = frozenset(v for v, c in col.items() if c == flip)
        B = frozenset(T.verts) - A
        side = {v: 0 if v in A else 1 for v in T.verts}
        if len(T.leaves()) >= 3 and leaf_condition_failure(T, side) is None:
            out.append((A, B))
    return out


def build_extended_tree_line_graph(T: Tree, bipartition: tuple[Iterable[int], Iterable[int]],
                                   strict: bool = True) -> tuple[Graph, CrossEdgeContext]:
    """The graph H(T) and its canonical strip system.

    The edges of T, in sorted order, become vertices ``0..m-1``; the
    cross-edge ends are ``a = m`` and ``b = m + 1``.  The bipartition must
    be a proper 2-colouring.  With ``strict`` the leaf condition is
    enforced: for every vertex v of T, at most one component of T - v has
    no leaf in A' and at most one has no leaf in B'.
    """
    A, B = frozenset(bipartition[0]), frozenset(bipartition[1])
    vs = frozenset(T.verts)
    if len(vs) < 3:
        raise TreeConditionError("too-few-vertices", "T needs at least three vertices")
    leaves = T.leaves()
    if len(leaves) < 3:
        raise TreeConditionError("too-few-leaves", f"T has {len(leaves)} leaves, at least three are needed")
    if A & B or A | B != vs:
        raise TreeConditionError("not-a-bipartition", "(A', B') must partition V(T)")
    for u, v in T.edges:
        if (u in A) == (v in A):
            raise TreeConditionError("not-a-bipartition", f"edge ({u}, {v}) lies inside one side")
    side = {v: 0 if v in A else 1 for v in vs}
    if strict:
        bad = leaf_condition_failure(T, side)
        if bad is not None:
            v, s = bad
            raise TreeConditionError(
                "component-condition",
                f"T - {v} has two components with no leaf in {'AB'[s]}'")
    edges = list(T.edges)
    index = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    a, b = m, m + 1
    gedges = []
    for i, j in itertools.combinations(range(m), 2):
        if set(edges[i]) & set(edges[j]):
            gedges.append((i, j))
    adj = T.adjacency()
    leaf_edge = {t: index[_e(t, adj[t][0])] for t in leaves}
    for t in leaves:
        gedges.append((leaf_edge[t], a if t in A else b))
    gedges.append((a, b))
    G = Graph.from_edges(m + 2, gedges)

    J, branch_of = T.shape()
    Me = {je: frozenset(index[_e(p[i], p[i + 1])] for i in range(len(p) - 1)) for je, p in branch_of.items()}
    Mu = {u: frozenset(index[_e(u, w)] for w in adj[u]) for u in J.verts}
    jleaves = set(J.leaves())
    alpha = frozenset(u for u in jleaves if u in A)
    beta = frozenset(u for u in jleaves if u in B)
    ctx = CrossEdgeContext(JStripSystem(J, Me, Mu), a, b, alpha, beta, OPTIMAL)
    return G, ctx


# ---------------------------------------------------------------------------
# validators


def validate_jstrip(G: Graph, sys: JStripSystem) -> BulletVerdict:
    """Check the five J-strip system bullets in order."""
    J = sys.J
    if len(J.verts) < 3:
        return BulletVerdict(False, 0, "J needs at least three vertices")
    if set(sys.Me) != set(J.edges):
        return BulletVerdict(False, 0, "Me must be indexed by the edges of J", sorted(set(sys.Me) ^ set(J.edges)))
    if not set(sys.Mu) <= set(J.verts):
        return BulletVerdict(False, 0, "Mu indexed by a non-vertex of J", sorted(set(sys.Mu) - set(J.verts)))
    everything = frozenset(range(G.n))
    for s in itertools.chain(sys.Me.values(), sys.Mu.values()):
        if not s <= everything:
            return BulletVerdict(False, 0, "vertex out of range", sorted(s - everything))
    me = {e: mask_of(s) for e, s in sys.Me.items()}
    mu = {u: mask_of(sys.Mu.get(u, ())) for u in J.verts}
    edges = list(J.edges)
    for e, f in itertools.combinations(edges, 2):
        if me[e] & me[f]:
            return BulletVerdict(False, 1, "edge sets overlap", {"edges": [e, f], "vertices": sorted(bits(me[e] & me[f]))})
    adj = J.adjacency()
    for u in J.verts:
        cover = 0
        for w in adj[u]:
            cover |= me[_e(u, w)]
        if mu[u] & ~cover:
            return BulletVerdict(False, 2, "hub not covered by incident edge sets", {"u": u, "vertices": sorted(bits(mu[u] & ~cover))})
    for e in edges:
        u, v = e
        A, B = me[e] & mu[u], me[e] & mu[v]
        C = me[e] & ~(A | B)
        if not A or not B:
            return BulletVerdict(False, 3, "strip has an empty side", {"edge": e})
        missing = (A | B | C) & ~rung_cover(G, A, B, C)
        if missing:
            return BulletVerdict(False, 3, "vertices on no rung", {"edge": e, "vertices": sorted(bits(missing))})
    for e, f in itertools.combinations(edges, 2):
        shared = set(e) & set(f)
        if not shared:
            hit = G.nbhd(me[e]) & me[f]
            if hit:
                return BulletVerdict(False, 4, "edge between strips of disjoint edges", {"edges": [e, f], "vertices": sorted(bits(hit))})
            continue
        (u,) = shared
        x, y = me[e] & mu[u], me[f] & mu[u]
        for p in bits(me[e]):
            row = G.rows[p] & me[f]
            want = y if x >> p & 1 else 0
            if row != want:
                return BulletVerdict(False, 5, "edges between strips sharing a vertex are not exactly the hub edges",
                                     {"edges": [e, f], "vertex": p})
    return OK


def validate_cross_edge(G: Graph, ctx: CrossEdgeContext) -> BulletVerdict:
    """Check the four cross-edge bullets in order (the strip system itself
    is checked by :func:`validate_jstrip`)."""
    J = ctx.J
    a, b = ctx.a, ctx.b
    if not (0 <= a < G.n and 0 <= b < G.n) or not G.has_edge(a, b):
        return BulletVerdict(False, 0, "ab is not an edge of G", (a, b))
    leaves = frozenset(J.leaves())
    if ctx.alpha & ctx.beta or ctx.alpha | ctx.beta != leaves:
        return BulletVerdict(False, 0, "(alpha, beta) is not a partition of the leaves of J",
                             {"alpha": sorted(ctx.alpha), "beta": sorted(ctx.beta)})
    adj = J.adjacency()
    if len(J.verts) < 3:
        return BulletVerdict(False, 1, "J has fewer than three vertices")
    for u in J.verts:
        if len(adj[u]) == 2:
            return BulletVerdict(False, 1, "J has a vertex of degree two", u)
    for s in J.verts:
        if sum(w in ctx.alpha for w in adj[s]) > 1:
            return BulletVerdict(False, 2, "vertex with two neighbours in alpha", s)
        if sum(w in ctx.beta for w in adj[s]) > 1:
            return BulletVerdict(False, 2, "vertex with two neighbours in beta", s)
    for e, s in ctx.system.Me.items():
        if a in s or b in s:
            return BulletVerdict(False, 3, "a or b lies in an edge set", e)
    vm = mask_of(ctx.system.vertices)
    for end, side in ((a, ctx.alpha), (b, ctx.beta)):
        want = 0
        for u in side:
            want |= mask_of(ctx.hub(u))
        have = G.rows[end] & vm
        if have != want:
            return BulletVerdict(False, 4, "cross-edge end attaches wrongly to V(M)",
                                 {"end": end, "missing": sorted(bits(want & ~have)), "extra": sorted(bits(have & ~want))})
    return OK


# ---------------------------------------------------------------------------
# locality


def is_local(X: VertexLike, ctx: CrossEdgeContext) -> bool:
    """The three locality clauses, applied literally.  For the b-clause the
    set with b removed must lie in a beta hub."""
    xs = frozenset(X)
    dom = ctx.system.vertices | {ctx.a, ctx.b}
    if not xs <= dom:
        raise ValueError(f"X has vertices outside V(M) and the cross-edge: {sorted(xs - dom)}")
    if any(xs <= s for s in ctx.system.Me.values()):
        return True
    if any(xs <= ctx.hub(u) for u in ctx.J.verts):
        return True
    a, b = ctx.a, ctx.b
    if a in xs and b not in xs and any(xs - {a} <= ctx.hub(u) for u in ctx.alpha):
        return True
    if b in xs and a not in xs and any(xs - {b} <= ctx.hub(u) for u in ctx.beta):
        return True
    return False


def _membership(ctx: CrossEdgeContext) -> dict[int, int]:
    """For each vertex, a bitmask of the maximal local sets containing it."""
    sets: list[frozenset[int]] = list(ctx.system.Me.values())
    sets += [ctx.hub(u) for u in ctx.J.verts]
    sets += [ctx.hub(u) | {ctx.a} for u in ctx.alpha]
    sets += [ctx.hub(u) | {ctx.b} for u in ctx.beta]
    out: dict[int, int] = {}
    for i, s in enumerate(sets):
        for v in s:
            out[v] = out.get(v, 0) | 1 << i
    return out


def nonlocal_pair(X: VertexLike, ctx: CrossEdgeContext) -> Optional[tuple[int, int]]:
    """A two-element subset of X that is not local.

    Returns None when X is local or contains both a and b.  The search is
    over all pairs, so a None for any other X would mean no such pair
    exists.
    """
    xs = sorted(frozenset(X))
    if ctx.a in xs and ctx.b in xs:
        return None
    if is_local(xs, ctx):
        return None
    memb = _membership(ctx)
    for x, y in itertools.combinations(xs, 2):
        if not memb.get(x, 0) & memb.get(y, 0):
            return x, y
    return None


# ---------------------------------------------------------------------------
# recognising induced extended tree line-graphs


def tree_from_line_graph(rows, W: int) -> Optional[tuple[Tree, dict[int, tuple[int, int]]]]:
    """If G[W] is the line graph of a tree T with at least three vertices,
    return T and the map from W to edges of T."""
    if not W:
        return None
    cliques: dict[int, int] = {}
    member: dict[int, list[int]] = {w: [] for w in bits(W)}
    for x in bits(W):
        for y in bits(rows[x] & W):
            if y < x:
                continue
            c = rows[x] & rows[y] & W | 1 << x | 1 << y
            if c in cliques:
                continue
            for z in bits(c):
                if c & ~rows[z] & ~(1 << z):
                    return None
            cliques[c] = len(cliques)
            for z in bits(c):
                member[z].append(cliques[c])
    nxt = len(cliques)
    emap: dict[int, tuple[int, int]] = {}
    for w, cs in member.items():
        if len(cs) > 2:
            return None
        cs = list(cs)
        while len(cs) < 2:
            cs.append(nxt)
            nxt += 1
        emap[w] = _e(cs[0], cs[1])
    try:
        T = Tree(tuple(range(nxt)), tuple(emap.values()))
    except GraphError:
        return None
    if len(T.verts) < 3:
        return None
    ws = list(emap)
    for i, x in enumerate(ws):
        for y in ws[i + 1:]:
            if bool(set(emap[x]) & set(emap[y])) != bool(rows[x] >> y & 1):
                return None
    return T, emap


@dataclass(frozen=True, eq=False)
class _Shape:
    """One induced extended tree line-graph found in G."""

    W: int
    T: Tree
    emap: dict[int, tuple[int, int]]
    alpha_t: frozenset[int]
    beta_t: frozenset[int]

    def context(self, a: int, b: int, maximality: str = UNKNOWN) -> CrossEdgeContext:
        T = self.T
        adj = T.adjacency()
        inv = {e: w for w, e in self.emap.items()}
        J, branch_of = T.shape()
        Me = {je: frozenset(inv[_e(p[i], p[i + 1])] for i in range(len(p) - 1)) for je, p in branch_of.items()}
        Mu = {u: frozenset(inv[_e(u, x)] for x in adj[u]) for u in J.verts}
        jl = set(J.leaves())
        return CrossEdgeContext(JStripSystem(J, Me, Mu), a, b,
                                frozenset(jl & self.alpha_t), frozenset(jl & self.beta_t), maximality)


def _as_extended(G: Graph, a: int, b: int, W: int) -> Optional[_Shape]:
    hit = tree_from_line_graph(G.rows, W)
    if hit is None:
        return None
    T, emap = hit
    leaves = T.leaves()
    if len(leaves) < 3:
        return None
    adj = T.adjacency()
    inv = {e: w for w, e in emap.items()}
    na, nb = G.rows[a] & W, G.rows[b] & W
    col = tree_colouring(T)
    alpha_t, beta_t = set(), set()
    leafmask = 0
    for t in leaves:
        w = inv[_e(t, adj[t][0])]
        leafmask |= 1 << w
        ina, inb = na >> w & 1, nb >> w & 1
        if ina == inb:
            return None
        (alpha_t if ina else beta_t).add(t)
    if (na | nb) & ~leafmask:
        return None
    if len({col[t] for t in alpha_t}) > 1 or len({col[t] for t in beta_t}) > 1:
        return None
    if alpha_t and beta_t and col[next(iter(alpha_t))] == col[next(iter(beta_t))]:
        return None
    side = {v: 0 if v in alpha_t else 1 for v in leaves}
    if leaf_condition_failure(T, side) is not None:
        return None
    return _Shape(W, T, emap, frozenset(alpha_t), frozenset(beta_t))


def induced_extended_tree_line_graphs(G: Graph, a: int, b: int, budget: Budget | None = None) -> list[_Shape]:
    """Every induced extended tree line-graph of G with cross-edge ab, as
    the vertex set W it uses besides a and b."""
    if not G.has_edge(a, b):
        return []
    pool = G.full & ~(1 << a | 1 << b) & ~(G.rows[a] & G.rows[b])
    verts = list(bits(pool))
    out = []
    need_a, need_b = G.rows[a], G.rows[b]
    for r in range(5, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            if budget is not None:
                budget.charge()
            W = mask_of(combo)
            if not W & need_a or not W & need_b:
                continue
            if len(components_mask(G, W)) != 1:
                continue
            shape = _as_extended(G, a, b, W)
            if shape is not None:
                out.append(shape)
    return out


def _shape_key(J: Tree, alpha: frozenset[int]) -> tuple:
    from ..harness.canonical import canonical_key

    ids = {v: i for i, v in enumerate(J.verts)}
    edges = [(ids[u], ids[v]) for u, v in J.edges]
    n = len(ids)
    for u in sorted(alpha):
        edges.append((ids[u], n))
        n += 1
    return canonical_key(Graph.from_edges(n, edges))


# ---------------------------------------------------------------------------
# optimal systems


@dataclass(frozen=True, eq=False)
class TreeSearchResult:
    context: Optional[CrossEdgeContext]
    maximality: str
    nodes: int
    report: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "system": None if self.context is None else self.context.to_json(),
            "maximality": self.maximality,
            "nodes": self.nodes,
            "report": self.report,
        }


class _SystemSearch:
    """Branch and bound over vertex labels for a fixed (J, alpha, beta).

    A label is either None (vertex not in V(M)) or ``(e, in_u, in_v)``
    placing the vertex in M_e and, per flag, in the hubs of the ends of e.
    """

    def __init__(self, G: Graph, a: int, b: int, J: Tree, alpha, beta, pool: int, bud: Budget):
        self.G, self.a, self.b, self.J = G, a, b, J
        self.alpha, self.beta = frozenset(alpha), frozenset(beta)
        self.bud = bud
        self.edges = list(J.edges)
        labels = [(i, fu, fv) for i in range(len(self.edges)) for fu in (0, 1) for fv in (0, 1)]
        self.verts = list(bits(pool))
        ra, rb = G.rows[a], G.rows[b]
        self.domain: dict[int, list] = {}
        for v in self.verts:
            dom = []
            for lab in labels:
                if (ra >> v & 1) == self._in_side(lab, self.alpha) and (rb >> v & 1) == self._in_side(lab, self.beta):
                    dom.append(lab)
            self.domain[v] = dom
        self.best: Optional[dict[int, tuple]] = None
        self.best_size = -1

    def _in_side(self, lab, side) -> int:
        i, fu, fv = lab
        u, v = self.edges[i]
        return int((fu and u in side) or (fv and v in side))

    def compatible(self, x: int, lx, y: int, ly) -> bool:
        adj = self.G.has_edge(x, y)
        i, xu, xv = lx
        j, yu, yv = ly
        if i == j:
            return True
        e, f = self.edges[i], self.edges[j]
        shared = set(e) & set(f)
        if not shared:
            return not adj
        (s,) = shared
        xin = xu if e[0] == s else xv
        yin = yu if f[0] == s else yv
        return adj == bool(xin and yin)

    def feasible(self, assign: dict[int, tuple]) -> bool:
        G = self.G
        for i, (u, v) in enumerate(self.edges):
            A = B = C = 0
            for x, (j, fu, fv) in assign.items():
                if j != i:
                    continue
                if fu:
                    A |= 1 << x
                if fv:
                    B |= 1 << x
                if not fu and not fv:
                    C |= 1 << x
            if not A or not B:
                return False
            if rung_cover(G, A, B, C) != A | B | C:
                return False
        return True

    def run(self, floor: int) -> None:
        """Find a feasible assignment with more than ``floor`` vertices."""
        self.best_size = floor
        order = sorted(self.verts, key=lambda v: (len(self.domain[v]) == 0, -self.G.degree(v), v))
        doms = {v: list(self.domain[v]) for v in order}
        self._dfs(order, 0, {}, doms)

    def _dfs(self, order, k, assign, doms) -> None:
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
            newdoms = dict(doms)
            for w in order[k + 1:]:
                if doms[w]:
                    newdoms[w] = [l for l in doms[w] if self.compatible(v, lab, w, l)]
            assign[v] = lab
            self._dfs(order, k + 1, assign, newdoms)
            del assign[v]
        self._dfs(order, k + 1, assign, doms)

    def to_context(self, assign: dict[int, tuple], maximality: str) -> CrossEdgeContext:
        return CrossEdgeContext(_system_of(self.J, assign), self.a, self.b, self.alpha, self.beta, maximality)


def _assignment_of(ctx: CrossEdgeContext) -> dict[int, tuple]:
    edges = list(ctx.J.edges)
    out = {}
    for i, e in enumerate(edges):
        for x in ctx.system.Me[e]:
            out[x] = (i, int(x in ctx.hub(e[0])), int(x in ctx.hub(e[1])))
    return out


def search_tree_strip_system(G: Graph, a: int, b: int, budget: Budget | int | None = None) -> TreeSearchResult:
    """An optimal J-strip system for the cross-edge ab, or None when G has
    no induced extended tree line-graph with that cross-edge.

    Stage one finds the induced extended tree line-graphs with the most
    branches; stage two maximises V(M) for each of their shapes by branch
    and bound.  If the budget runs out the best system found is grown by
    local moves and labelled ``locally-maximal``.
    """
    if not G.has_edge(a, b):
        raise ValueError("ab must be an edge of G")
    bud = Budget.coerce(DEFAULT_SEARCH_BUDGET if budget is None else budget)
    try:
        shapes = induced_extended_tree_line_graphs(G, a, b, bud)
    except BudgetExhausted:
        return TreeSearchResult(None, UNKNOWN, bud.spent, {"stage": 1, "budget": "exhausted"})
    if not shapes:
        return TreeSearchResult(None, OPTIMAL, bud.spent, {"stage": 1, "found": 0})
    top = max(len(s.T.shape()[0].edges) for s in shapes)
    reps: dict[tuple, CrossEdgeContext] = {}
    for s in shapes:
        ctx = s.context(a, b)
        if len(ctx.J.edges) != top:
            continue
        key = _shape_key(ctx.J, ctx.alpha)
        prev = reps.get(key)
        if prev is None or len(ctx.system.vertices) > len(prev.system.vertices):
            reps[key] = ctx
    pool = G.full & ~(1 << a | 1 << b) & ~(G.rows[a] & G.rows[b])
    best: Optional[CrossEdgeContext] = None
    certified = True
    for key in sorted(reps):
        seed = reps[key]
        search = _SystemSearch(G, a, b, seed.J, seed.alpha, seed.beta, pool, bud)
        found = seed
        try:
            search.run(len(seed.system.vertices))
            if search.best is not None:
                found = search.to_context(search.best, UNKNOWN)
        except BudgetExhausted:
            certified = False
            if search.best is not None:
                found = search.to_context(search.best, UNKNOWN)
        if best is None or len(found.system.vertices) > len(best.system.vertices):
            best = found
    assert best is not None
    if certified:
        ctx = CrossEdgeContext(best.system, a, b, best.alpha, best.beta, OPTIMAL)
        return TreeSearchResult(ctx, OPTIMAL, bud.spent, {"shapes": len(reps), "branches": top})
    grown = grow_locally(G, best)
    return TreeSearchResult(grown, LOCALLY_MAXIMAL, bud.spent,
                            {"shapes": len(reps), "branches": top, "budget": "exhausted",
                             "moves": ["add one vertex", "add two vertices"]})


def _system_of(J: Tree, assign: dict[int, tuple]) -> JStripSystem:
    edges = list(J.edges)
    Me = {e: set() for e in edges}
    Mu = {u: set() for u in J.verts}
    for x, (i, fu, fv) in assign.items():
        e = edges[i]
        Me[e].add(x)
        if fu:
            Mu[e[0]].add(x)
        if fv:
            Mu[e[1]].add(x)
    return JStripSystem(J, Me, Mu)


def _labelled(ctx: CrossEdgeContext, assign: dict[int, tuple], maximality: str) -> CrossEdgeContext:
    return CrossEdgeContext(_system_of(ctx.J, assign), ctx.a, ctx.b, ctx.alpha, ctx.beta, maximality)


def single_vertex_augmentations(G: Graph, ctx: CrossEdgeContext) -> Iterable[CrossEdgeContext]:
    """Every context obtained by adding one outside vertex under some label."""
    used = ctx.system.vertices | {ctx.a, ctx.b}
    base = _assignment_of(ctx)
    m = len(ctx.J.edges)
    for v in range(G.n):
        if v in used:
            continue
        for i in range(m):
            for fu in (0, 1):
                for fv in (0, 1):
                    assign = dict(base)
                    assign[v] = (i, fu, fv)
                    yield _labelled(ctx, assign, UNKNOWN)


def _valid(G: Graph, ctx: CrossEdgeContext) -> bool:
    return bool(validate_jstrip(G, ctx.system)) and bool(validate_cross_edge(G, ctx))


def grow_locally(G: Graph, ctx: CrossEdgeContext) -> CrossEdgeContext:
    """Apply one- and two-vertex additions until none is valid."""
    current = ctx
    while True:
        for cand in single_vertex_augmentations(G, current):
            if _valid(G, cand):
                current = cand
                break
        else:
            grown = None
            for cand in single_vertex_augmentations(G, current):
                for cand2 in single_vertex_augmentations(G, cand):
                    if _valid(G, cand2):
                        grown = cand2
                        break
                if grown is not None:
                    break
            if grown is None:
                return CrossEdgeContext(current.system, ctx.a, ctx.b, ctx.alpha, ctx.beta, LOCALLY_MAXIMAL)
            current = grown


# ---------------------------------------------------------------------------
# theorem checks on an optimal system


def _touching(G: Graph, F: int, within: int) -> int:
    return G.nbhd(F) & within


def small_components(G: Graph, ctx: CrossEdgeContext) -> list[int]:
    """Components of G minus V(M), the common neighbours of a and b, and a, b."""
    vm = mask_of(ctx.system.vertices)
    z = G.rows[ctx.a] & G.rows[ctx.b]
    return components_mask(G, G.full & ~vm & ~z & ~(1 << ctx.a | 1 << ctx.b))


def _in_some_hub(X: int, ctx: CrossEdgeContext, which: Iterable[int]) -> Optional[int]:
    for t in sorted(which):
        if X & ~mask_of(ctx.hub(t)) == 0:
            return t
    return None


def classify_small_subgraph(G: Graph, ctx: CrossEdgeContext, F: VertexLike) -> CheckResult:
    """Check the attachment set X(F) of a connected F outside V(M), the
    common neighbours of a and b, and a, b themselves.

    If at most one of a, b has a neighbour in F then X(F) must be local;
    if both do then X(F) must lie in the hub of a single leaf.
    """
    f = as_mask(G, F)
    if not f:
        return inapplicable("F is empty")
    a, b = ctx.a, ctx.b
    vm = mask_of(ctx.system.vertices)
    z = G.rows[a] & G.rows[b]
    if f & (vm | z | 1 << a | 1 << b):
        raise ValueError("F must avoid V(M), the common neighbours of a and b, and a, b")
    if len(components_mask(G, f)) != 1:
        raise ValueError("F must be connected")
    X = _touching(G, f, vm)
    nbF = G.nbhd(f)
    both = bool(nbF >> a & 1) and bool(nbF >> b & 1)
    info = {"X": sorted(bits(X)), "touches": [v for v in (a, b) if nbF >> v & 1]}
    if not both:
        if is_local(as_set(X), ctx):
            return passed(detail="attachments are local", caveat=ctx.caveat, info=info)
        pair = nonlocal_pair(as_set(X), ctx)
        return failed(witness={"F": sorted(bits(f)), "pair": pair}, detail="attachments are not local",
                      caveat=ctx.caveat, info=info)
    t = _in_some_hub(X, ctx, ctx.J.leaves())
    if t is not None:
        return passed(detail=f"attachments lie in the hub of leaf {t}", caveat=ctx.caveat, info=info)
    return failed(witness={"F": sorted(bits(f))}, detail="a and b both touch F but no leaf hub holds X(F)",
                  caveat=ctx.caveat, info=info)


def _external(G: Graph, y: int, end: int, vm: int) -> bool:
    outside = G.full & ~G.closed(end)
    target = vm & outside
    if not target:
        return False
    for comp in components_mask(G, outside):
        if comp & target and G.rows[y] & comp:
            return True
    return False


def major_vertices(G: Graph, ctx: CrossEdgeContext) -> frozenset[int]:
    """Common neighbours y of a, b with paths to V(M) outside N[a] avoiding
    other neighbours of a, and likewise for b."""
    vm = mask_of(ctx.system.vertices)
    out = set()
    for y in bits(G.rows[ctx.a] & G.rows[ctx.b]):
        if _external(G, y, ctx.a, vm) and _external(G, y, ctx.b, vm):
            out.add(y)
    return frozenset(out)


def check_major_clique(G: Graph, ctx: CrossEdgeContext) -> CheckResult:
    Y = mask_of(major_vertices(G, ctx))
    if is_clique_mask(G, Y):
        return passed(detail="major vertices form a clique", caveat=ctx.caveat, info={"Y": sorted(bits(Y))})
    pair = next((x, y) for x, y in itertools.combinations(bits(Y), 2) if not G.has_edge(x, y))
    return failed(witness={"nonadjacent": pair}, detail="two major vertices are nonadjacent",
                  caveat=ctx.caveat, info={"Y": sorted(bits(Y))})


def check_funnies(G: Graph, ctx: CrossEdgeContext) -> CheckResult:
    """Components touched by a non-major common neighbour attach inside
    the hub of a single leaf."""
    vm = mask_of(ctx.system.vertices)
    z = G.rows[ctx.a] & G.rows[ctx.b]
    zy = z & ~mask_of(major_vertices(G, ctx))
    checked = 0
    for F in small_components(G, ctx):
        if not G.nbhd(F) & zy:
            continue
        checked += 1
        X = _touching(G, F, vm)
        if _in_some_hub(X, ctx, ctx.J.leaves()) is None:
            return failed(witness={"F": sorted(bits(F)), "X": sorted(bits(X))},
                          detail="component touched by a non-major vertex attaches outside every leaf hub",
                          caveat=ctx.caveat, info={"components": checked})
    return passed(caveat=ctx.caveat, info={"components": checked})


def check_splendid_refinements(G: Graph, ctx: CrossEdgeContext, assume_splendid: bool = False) -> CheckResult:
    """The refinements available when a is splendid, checked bullet by bullet."""
    from ..cutsets import is_splendid

    if not assume_splendid and not is_splendid(G, ctx.a).ok:
        return inapplicable("a is not splendid")
    a, b = ctx.a, ctx.b
    vm = mask_of(ctx.system.vertices)
    z = G.rows[a] & G.rows[b]
    zy = z & ~mask_of(major_vertices(G, ctx))
    cav = ctx.caveat
    beta_hubs = 0
    for t in ctx.beta:
        beta_hubs |= mask_of(ctx.hub(t))
    bad = G.nbhd(zy) & vm & ~beta_hubs
    if bad:
        return failed(witness={"vertices": sorted(bits(bad))}, detail="bullet 1: neighbour of a non-major vertex outside the beta hubs",
                      caveat=cav)
    adj = ctx.J.adjacency()
    for t in sorted(ctx.alpha):
        s = adj[t][0]
        if ctx.hub(s) & ctx.hub(t):
            return failed(witness={"leaf": t, "vertices": sorted(ctx.hub(s) & ctx.hub(t))},
                          detail="bullet 2: alpha leaf strip is not proper", caveat=cav)
    non_alpha = [u for u in ctx.J.verts if u not in ctx.alpha]
    for F in small_components(G, ctx):
        X = _touching(G, F, vm)
        nbF = G.nbhd(F)
        wit = {"F": sorted(bits(F)), "X": sorted(bits(X))}
        if nbF >> a & 1:
            return failed(witness=wit, detail="bullet 3: a has a neighbour in a small component", caveat=cav)
        if nbF >> b & 1 or nbF & zy:
            if _in_some_hub(X, ctx, ctx.beta) is None:
                return failed(witness=wit, detail="bullet 5: attachments not inside a beta hub", caveat=cav)
        else:
            in_edge = any(X & ~mask_of(s) == 0 for s in ctx.system.Me.values())
            if not in_edge and _in_some_hub(X, ctx, non_alpha) is None:
                return failed(witness=wit, detail="bullet 4: attachments not inside an edge set or non-alpha hub",
                              caveat=cav)
    return passed(caveat=cav)


def check_skewpyr(G: Graph, hole, a: int, b: int, assume_even_hole_free: bool = False) -> CheckResult:
    """Two nonadjacent vertices, each with at least three neighbours on a
    hole and both adjacent to its last and first vertices, see the hole in
    the two mirror-image triangle patterns."""
    from ..detectors import find_even_hole

    hole = tuple(hole)
    if not is_hole(G, hole):
        return inapplicable("not a hole of G")
    if a in hole or b in hole or a == b:
        return inapplicable("a and b must be distinct and off the hole")
    if G.has_edge(a, b):
        return inapplicable("a and b are adjacent")
    hm = mask_of(hole)
    na, nb = G.rows[a] & hm, G.rows[b] & hm
    if na.bit_count() < 3 or nb.bit_count() < 3:
        return inapplicable("a or b has fewer than three neighbours on the hole")
    h1, hn = hole[0], hole[-1]
    ends = 1 << h1 | 1 << hn
    if na & ends != ends or nb & ends != ends:
        return inapplicable("a, b not complete to the first and last hole vertices")
    if not assume_even_hole_free and find_even_hole(G) is not None:
        return inapplicable("G has an even hole")
    left = mask_of((hole[-2], hn, h1))
    right = mask_of((hn, h1, hole[1]))
    if (na == left and nb == right) or (na == right and nb == left):
        return passed()
    return failed(witness={"hole": hole, "a": sorted(bits(na)), "b": sorted(bits(nb))},
                  detail="neighbourhoods on the hole are not the two end triangles")
