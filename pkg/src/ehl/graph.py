"""Immutable simple graphs stored as bitmask adjacency rows.

A vertex set is an ``int`` whose bit ``v`` is set when ``v`` belongs to it.
Every module in the package works on masks internally; the public helpers
here accept any iterable of vertices as well, and return ``frozenset``
values where a caller is likely to print or compare them.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

MAX_VERTICES = int(os.environ.get("EHL_MAX_VERTICES", "64"))

VertexLike = Union[int, Iterable[int]]


class GraphError(ValueError):
    """Raised for malformed graphs and out-of-range vertex arguments."""


class BudgetExhausted(RuntimeError):
    """A search ran out of its node budget before the space was exhausted."""

    def __init__(self, spent: int, limit: int):
        super().__init__(f"search budget of {limit} nodes exhausted")
        self.spent = spent
        self.limit = limit


class Budget:
    """Counts search nodes and raises :class:`BudgetExhausted` past ``limit``.

    ``limit=None`` means unbounded.  One instance may be threaded through
    several nested searches so that they share a single allowance.
    """

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.spent = 0

    def charge(self, k: int = 1) -> None:
        self.spent += k
        if self.limit is not None and self.spent > self.limit:
            raise BudgetExhausted(self.spent, self.limit)

    @classmethod
    def coerce(cls, budget: "Budget | int | None") -> "Budget":
        if isinstance(budget, Budget):
            return budget
        return cls(budget)


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``.

    ``rows[v]`` is the bitmask of the open neighbourhood N(v).
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {v} names a vertex >= n")
            if row >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        """Build without validation; for hot loops that construct rows themselves."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(bits(r)) for r in self.rows)

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def closed(self, v: int) -> int:
        """N[v] as a mask."""
        return self.rows[v] | 1 << v

    def nbhd(self, mask: int) -> int:
        """N(S): vertices outside S with a neighbour in S."""
        out = 0
        for v in bits(mask):
            out |= self.rows[v]
        return out & ~mask

    def closed_nbhd(self, mask: int) -> int:
        """N[S] = S together with N(S)."""
        out = mask
        for v in bits(mask):
            out |= self.rows[v]
        return out

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edges_within(self, mask: int) -> list[tuple[int, int]]:
        return [(u, v) for u in bits(mask) for v in bits(self.rows[u] & mask) if u < v]

    def complement(self) -> "Graph":
        full = self.full
        return Graph.trusted(self.n, [full & ~r & ~(1 << v) for v, r in enumerate(self.rows)])

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is this graph's vertex ``order[i]``."""
        pos = {v: i for i, v in enumerate(order)}
        rows = [0] * self.n
        for i, v in enumerate(order):
            r = 0
            for u in bits(self.rows[v]):
                r |= 1 << pos[u]
            rows[i] = r
        return Graph.trusted(self.n, rows)

    def add_vertex(self, nbrs: VertexLike) -> "Graph":
        """Return a copy with one extra vertex ``n`` adjacent to ``nbrs``."""
        m = as_mask(self, nbrs)
        rows = [r | (1 << self.n if m >> v & 1 else 0) for v, r in enumerate(self.rows)]
        rows.append(m)
        return Graph(self.n + 1, tuple(rows))

    def toggle_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError("cannot toggle a self-loop")
        rows = list(self.rows)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        return Graph.trusted(self.n, rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def as_mask(G: Graph, S: VertexLike) -> int:
    """Normalise a vertex set argument to a mask, checking range."""
    if isinstance(S, int):
        m = S
    else:
        m = 0
        for v in S:
            if not 0 <= v < G.n:
                raise GraphError(f"vertex {v} out of range for n={G.n}")
            m |= 1 << v
    if m < 0 or m >> G.n:
        raise GraphError("vertex set names vertices outside the graph")
    return m


def as_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


class InducedSubgraph(NamedTuple):
    graph: Graph
    vertices: tuple[int, ...]  # vertices[i] is the parent vertex behind local vertex i


def induced(G: Graph, S: VertexLike) -> InducedSubgraph:
    m = as_mask(G, S)
    verts = tuple(bits(m))
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        r = 0
        for u in bits(G.rows[v] & m):
            r |= 1 << pos[u]
        rows.append(r)
    return InducedSubgraph(Graph.trusted(len(verts), rows), verts)


def components_mask(G: Graph, mask: int) -> list[int]:
    """Components of G[mask] as masks, ordered by smallest member."""
    out = []
    rows = G.rows
    rest = mask
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= rows[v]
            grow &= rest & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        rest &= ~comp
    return out


def components(G: Graph, S: VertexLike) -> list[frozenset[int]]:
    return [as_set(c) for c in components_mask(G, as_mask(G, S))]


def is_connected(G: Graph, S: VertexLike | None = None) -> bool:
    """The empty set counts as connected."""
    m = G.full if S is None else as_mask(G, S)
    return len(components_mask(G, m)) <= 1


def is_clique_mask(G: Graph, mask: int) -> bool:
    rows = G.rows
    for v in bits(mask):
        if (rows[v] | 1 << v) & mask != mask:
            return False
    return True


def is_clique(G: Graph, S: VertexLike) -> bool:
    return is_clique_mask(G, as_mask(G, S))


class Adjacency(enum.Enum):
    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"
    MIXED = "mixed"
    VACUOUS = "vacuously-both"


def adjacency_between(G: Graph, A: VertexLike, B: VertexLike) -> Adjacency:
    a = as_mask(G, A)
    b = as_mask(G, B)
    if a & b:
        raise GraphError("adjacency_between needs disjoint sets")
    if not a or not b:
        return Adjacency.VACUOUS
    complete = anti = True
    for v in bits(a):
        hit = G.rows[v] & b
        if hit:
            anti = False
        if hit != b:
            complete = False
    if complete:
        return Adjacency.COMPLETE
    if anti:
        return Adjacency.ANTICOMPLETE
    return Adjacency.MIXED


def complete_to(G: Graph, a: int, b: int) -> bool:
    """Mask form: every vertex of ``a`` is adjacent to every vertex of ``b``."""
    for v in bits(a):
        if G.rows[v] & b != b:
            return False
    return True


def anticomplete_to(G: Graph, a: int, b: int) -> bool:
    return G.nbhd(a) & b == 0 if a & b == 0 else False


@dataclass(frozen=True)
class Path:
    """A sequence of distinct vertices; length is the number of edges."""

    verts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.verts) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.verts[0], self.verts[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.verts[1:-1]

    @property
    def mask(self) -> int:
        return mask_of(self.verts)

    def is_path(self, G: Graph) -> bool:
        vs = self.verts
        if not vs or len(set(vs)) != len(vs) or any(not 0 <= v < G.n for v in vs):
            return False
        return all(G.has_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def is_induced(self, G: Graph) -> bool:
        if not self.is_path(G):
            return False
        vs = self.verts
        for i in range(len(vs)):
            for j in range(i + 2, len(vs)):
                if G.has_edge(vs[i], vs[j]):
                    return False
        return True


def is_hole(G: Graph, cycle: Sequence[int]) -> bool:
    """``cycle`` lists the vertices of an induced cycle of length >= 4 in order."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k or any(not 0 <= v < G.n for v in cycle):
        return False
    m = mask_of(cycle)
    for i, v in enumerate(cycle):
        want = 1 << cycle[i - 1] | 1 << cycle[(i + 1) % k]
        if G.rows[v] & m != want:
            return False
    return True


def enumerate_induced_paths(
    G: Graph,
    u: int,
    v: int,
    allowed: VertexLike,
    budget: Budget | int | None = None,
) -> Iterator[Path]:
    """Yield every induced u-v path whose interior lies in ``allowed``.

    Paths come out in nondecreasing length (iterative deepening), each
    exactly once.  Raises :class:`BudgetExhausted` once the shared node
    count passes the budget.
    """
    if u == v:
        raise GraphError("enumerate_induced_paths needs distinct ends")
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise GraphError("path end out of range")
    bud = Budget.coerce(budget)
    for path in _induced_paths_by_length(G, u, v, as_mask(G, allowed), bud):
        yield Path(path)


def _induced_paths_by_length(G: Graph, u: int, v: int, allowed: int, bud: Budget) -> Iterator[tuple[int, ...]]:
    rows = G.rows
    if rows[u] >> v & 1:
        bud.charge()
        yield (u, v)
        return
    allowed &= ~(1 << u | 1 << v)
    for target in range(2, allowed.bit_count() + 2):
        found, truncated = _paths_of_length(rows, u, v, allowed, target, bud)
        yield from sorted(found)
        if not truncated:
            return


def _paths_of_length(rows, u, v, allowed, target, bud):
    """Induced u-v paths with exactly ``target`` edges; ``truncated`` reports
    whether some branch was cut off by the length limit."""
    found = []
    truncated = False
    vbit = 1 << v
    # block = closed neighbourhoods of every path vertex except the last
    stack = [((u,), 0)]
    while stack:
        path, block = stack.pop()
        bud.charge()
        last = path[-1]
        nb = rows[last]
        if nb & vbit:
            if not block & vbit and len(path) == target:
                found.append(path + (v,))
            continue
        cand = nb & allowed & ~block
        if not cand:
            continue
        if len(path) == target:
            truncated = True
            continue
        newblock = block | nb | 1 << last
        for x in bits(cand):
            stack.append((path + (x,), newblock))
    return found, truncated


def all_induced_paths(rows: Sequence[int], u: int, v: int, allowed: int, bud: Budget | None = None) -> list[tuple[int, ...]]:
    """Every induced u-v path with interior in ``allowed`` (u != v), unordered.

    Works on raw adjacency rows for the detectors' inner loops.
    """
    if rows[u] >> v & 1:
        return [(u, v)]
    allowed &= ~(1 << u | 1 << v)
    vbit = 1 << v
    out = []
    stack = [((u,), 0)]
    while stack:
        path, block = stack.pop()
        if bud is not None:
            bud.charge()
        last = path[-1]
        nb = rows[last]
        if nb & vbit:
            if not block & vbit:
                out.append(path + (v,))
            continue
        cand = nb & allowed & ~block
        if cand:
            newblock = block | nb | 1 << last
            for x in bits(cand):
                stack.append((path + (x,), newblock))
    return out


def is_chordal(G: Graph, mask: int | None = None) -> bool:
    """True iff G[mask] has no hole (simplicial elimination)."""
    rows = G.rows
    rest = G.full if mask is None else mask
    while rest:
        for v in bits(rest):
            nb = rows[v] & rest
            if is_clique_mask(G, nb):
                rest &= ~(1 << v)
                break
        else:
            return False
    return True


def holes_of_length(G: Graph, length: int, bud: Budget | None = None, first_only: bool = False) -> list[tuple[int, ...]]:
    """Holes with exactly ``length`` vertices, each once, in lexicographic order.

    A hole is reported from its smallest vertex, in the direction whose
    second vertex is smaller than its last.
    """
    rows = G.rows
    n = G.n
    out: list[tuple[int, ...]] = []
    for s in range(n):
        above = G.full & ~((2 << s) - 1)
        if (above.bit_count() + 1) < length:
            break
        ns = rows[s] & above
        if ns.bit_count() < 2:
            continue
        far = above & ~rows[s]  # interior vertices p2..p_{L-2} avoid N[s]
        # DFS in increasing vertex order so hits come out lexicographically
        stack = [((s, p1), 1 << s | rows[s]) for p1 in sorted(bits(ns), reverse=True)]
        # block holds N[p0..p_{j-1}]; s's neighbourhood is handled separately
        while stack:
            path, block = stack.pop()
            if bud is not None:
                bud.charge()
            j = len(path) - 1
            last = path[-1]
            nb = rows[last]
            if j == length - 2:
                # closing vertex: adjacent to last and s, to nothing else on the path
                inner = 0
                for w in path[1:-1]:
                    inner |= rows[w] | 1 << w
                cand = nb & ns & ~inner & ~(1 << last)
                for x in bits(cand):
                    if x > path[1]:
                        out.append(path + (x,))
                        if first_only:
                            return out
                continue
            if j == 1:
                block = 1 << s | rows[s]
                cand = nb & far
            else:
                cand = nb & far & ~block
            if not cand:
                continue
            newblock = block | nb | 1 << last
            for x in sorted(bits(cand), reverse=True):
                stack.append((path + (x,), newblock))
        if first_only and out:
            return out
    return out


def enumerate_holes(G: Graph, parity: int | None = None, budget: Budget | int | None = None) -> Iterator[tuple[int, ...]]:
    """Every hole of G, shortest first, lexicographic within a length.

    ``parity`` 0 keeps even holes, 1 keeps odd holes, ``None`` keeps all.
    """
    bud = Budget.coerce(budget)
    start = 4
    step = 1 if parity is None else 2
    if parity == 1:
        start = 5
    for length in range(start, G.n + 1, step):
        yield from holes_of_length(G, length, bud)


@dataclass(frozen=True)
class Tree:
    """An abstract tree; vertex ids are arbitrary ints, not vertices of a Graph."""

    verts: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        vs = tuple(sorted(set(self.verts)))
        es = tuple(sorted({(min(u, v), max(u, v)) for u, v in self.edges}))
        object.__setattr__(self, "verts", vs)
        object.__setattr__(self, "edges", es)
        if not vs:
            raise GraphError("a tree needs at least one vertex")
        if len(es) != len(vs) - 1 or len(es) != len(self.edges):
            raise GraphError("a tree on k vertices has k-1 distinct edges")
        vset = set(vs)
        for u, v in es:
            if u == v or u not in vset or v not in vset:
                raise GraphError(f"bad tree edge ({u}, {v})")
        adj = self.adjacency()
        seen = {vs[0]}
        todo = [vs[0]]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        if seen != vset:
            raise GraphError("tree is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> "Tree":
        es = list(edges)
        vs = {x for e in es for x in e}
        return cls(tuple(vs), tuple(es))

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.verts}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def leaves(self) -> tuple[int, ...]:
        adj = self.adjacency()
        return tuple(v for v in self.verts if len(adj[v]) == 1)

    def branch_vertices(self) -> tuple[int, ...]:
        adj = self.adjacency()
        return tuple(v for v in self.verts if len(adj[v]) != 2)

    def branches(self) -> list[tuple[int, ...]]:
        """Maximal paths whose ends are branch vertices and whose interior
        vertices have degree two, each listed from its smaller end."""
        adj = self.adjacency()
        branch = set(self.branch_vertices())
        out = []
        seen_edges = set()
        for u in sorted(branch):
            for nxt in adj[u]:
                if (min(u, nxt), max(u, nxt)) in seen_edges:
                    continue
                path = [u, nxt]
                while path[-1] not in branch:
                    x = path[-1]
                    path.append(adj[x][0] if adj[x][0] != path[-2] else adj[x][1])
                for i in range(len(path) - 1):
                    seen_edges.add((min(path[i], path[i + 1]), max(path[i], path[i + 1])))
                if path[0] > path[-1]:
                    path.reverse()
                out.append(tuple(path))
        out.sort()
        return out

    def shape(self) -> tuple["Tree", dict[tuple[int, int], tuple[int, ...]]]:
        """The shape J and, for each J-edge, the branch of this tree it stands for."""
        brs = self.branches()
        jedges = {(p[0], p[-1]): p for p in brs}
        return Tree(self.branch_vertices(), tuple(jedges)), jedges
