"""Targeted instance generators for the structural suites.

Random small graphs almost never satisfy the hypotheses of the strip
theorems, so these generators start from a structure that does (an
extended tree line-graph, or a pyramid) and add a few vertices with
random attachments, keeping only the results that still satisfy the
hypotheses.  Every stream is a pure function of its seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from ..cutsets import is_splendid
from ..detectors import find_even_hole, find_extended_near_prism
from ..graph import Graph, Tree, bits
from ..strips.completed import CompletedStrip, complete_strip, three_outsiders
from ..strips.pyramid import PyramidStripSystem, search_pyramid_strip_system
from ..strips.tree import (OPTIMAL, CrossEdgeContext, build_extended_tree_line_graph, search_tree_strip_system,
                           valid_bipartitions)
from .canonical import canonical_key


@lru_cache(maxsize=None)
def trees_with_edges(m: int) -> tuple[Tree, ...]:
    """One tree per isomorphism class with m edges, built by adding leaves."""
    if m == 0:
        return (Tree((0,), ()),)
    seen: dict[tuple, Tree] = {}
    for T in trees_with_edges(m - 1):
        for v in T.verts:
            S = Tree(T.verts + (m,), T.edges + ((v, m),))
            G = Graph.from_edges(m + 1, S.edges)
            seen.setdefault(canonical_key(G), S)
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True, eq=False)
class TreeInstance:
    tree: Tree
    bipartition: tuple[frozenset[int], frozenset[int]]
    graph: Graph
    context: CrossEdgeContext


def extended_tree_line_graphs(max_edges: int = 8, min_edges: int = 2) -> Iterator[TreeInstance]:
    """H(T) for every tree with at least three leaves and every valid
    bipartition, smallest trees first."""
    for m in range(min_edges, max_edges + 1):
        for T in trees_with_edges(m):
            if len(T.leaves()) < 3:
                continue
            for bp in valid_bipartitions(T):
                G, ctx = build_extended_tree_line_graph(T, bp)
                yield TreeInstance(T, bp, G, ctx)


def _scripted_tree_augmentations(G: Graph, ctx: CrossEdgeContext) -> Iterator[Graph]:
    """Hand-shaped extras: pendant on an inner hub, a major vertex, a
    non-major common neighbour, common neighbours with three attachments in
    V(M) (alone and as an adjacent twin pair), and a short path touching a
    and b."""
    a, b = ctx.a, ctx.b
    inner = [u for u in ctx.J.verts if u not in ctx.alpha and u not in ctx.beta]
    for u in inner[:1]:
        v = min(ctx.hub(u))
        yield G.add_vertex([v])
    central = [e for e in ctx.J.edges if e[0] in inner and e[1] in inner]
    for e in central[:1]:
        far = [v for v in ctx.system.Me[e] if not G.has_edge(v, a) and not G.has_edge(v, b)]
        if far:
            yield G.add_vertex([a, b, far[0]])
    yield G.add_vertex([a, b])
    for S in itertools.combinations(sorted(ctx.system.vertices), 3):
        H = G.add_vertex([a, b, *S])
        if find_even_hole(H) is None:
            yield H
            yield H.add_vertex([a, b, *S, H.n - 1])
    for t in sorted(ctx.alpha)[:1]:
        x = min(ctx.hub(t))
        H = G.add_vertex([a, x])
        yield H.add_vertex([H.n - 1, b])


def _tree_attachment(G: Graph, ctx: CrossEdgeContext, rng: random.Random) -> list[int]:
    """Neighbours for a new vertex: half the time drawn near the cross-edge
    (a, b, their common neighbours, one leaf hub and earlier extras), else
    uniformly at random."""
    if rng.random() < 0.5:
        base_n = len(ctx.system.vertices) + 2
        t = rng.choice(ctx.J.leaves())
        pool = {ctx.a, ctx.b, *ctx.hub(t), *range(base_n, G.n)}
        pool |= set(bits(G.rows[ctx.a] & G.rows[ctx.b]))
        pool = sorted(pool)
        return rng.sample(pool, min(rng.randint(1, 3), len(pool)))
    return rng.sample(range(G.n), min(rng.randint(1, 3), G.n))


def augmented_tree_instances(seed: int, count: int, max_edges: int = 8, extra: int = 3,
                             scripted: bool = True, splendid_only: bool = False) -> Iterator[tuple[Graph, int, int]]:
    """Even-hole-free graphs containing an extended tree line-graph with
    cross-edge (a, b): scripted extras first, then random ones.  With
    ``splendid_only`` only graphs where a is splendid are kept."""
    base = list(extended_tree_line_graphs(max_edges))
    rng = random.Random(f"tree:{seed}")
    made = 0
    if scripted:
        for inst in base:
            for H in _scripted_tree_augmentations(inst.graph, inst.context):
                if made >= count:
                    return
                if find_even_hole(H) is None and (not splendid_only or is_splendid(H, inst.context.a).ok):
                    made += 1
                    yield H, inst.context.a, inst.context.b
    if splendid_only:
        base = [inst for inst in base if is_splendid(inst.graph, inst.context.a).ok]
    if not base:
        return
    attempts = 0
    while made < count and attempts < 200 * count:
        attempts += 1
        inst = rng.choice(base)
        G = inst.graph
        for _ in range(rng.randint(1, extra)):
            G = G.add_vertex(_tree_attachment(G, inst.context, rng))
        if find_even_hole(G) is None and (not splendid_only or is_splendid(G, inst.context.a).ok):
            made += 1
            yield G, inst.context.a, inst.context.b


@dataclass(frozen=True, eq=False)
class PyramidInstance:
    graph: Graph
    apex: int
    system: PyramidStripSystem


def pyramid_graph(lengths: tuple[int, ...]) -> Graph:
    """Apex 0 joined by paths of the given lengths to the vertices of a
    clique (a triangle for three paths)."""
    edges = []
    base = []
    n = 1
    for L in lengths:
        prev = 0
        for _ in range(L):
            edges.append((prev, n))
            prev = n
            n += 1
        base.append(prev)
    edges += [(x, y) for i, x in enumerate(base) for y in base[i + 1:]]
    return Graph.from_edges(n, edges)


def _pyramid_attachment(G: Graph, rng: random.Random) -> list[int]:
    """Neighbours for a new vertex: a near-twin of an existing vertex, a
    neighbour of the apex with a foothold away from it, or a random set."""
    roll = rng.random()
    if roll < 0.4:
        v = rng.randrange(1, G.n)
        nb = set(G.neighbours(v))
        if rng.random() < 0.5:
            nb.add(v)
        flip = rng.randrange(G.n)
        if flip != 0 or rng.random() < 0.2:
            nb ^= {flip}
        return sorted(nb)
    if roll < 0.75:
        near = set(G.neighbours(0))
        far = [x for x in range(1, G.n) if x not in near]
        pick = rng.sample(sorted(near), rng.randint(0, min(3, len(near))))
        pick += rng.sample(far, rng.randint(1, min(2, len(far))))
        return sorted({0, *pick})
    return rng.sample(range(G.n), min(rng.randint(1, 4), G.n))


def pyramid_hypotheses_hold(G: Graph, a: int) -> bool:
    return (find_even_hole(G) is None and is_splendid(G, a).ok
            and find_extended_near_prism(G, end=a) is None)


def pyramid_instances(seed: int, count: int, extra: int = 3, lengths=(2, 3),
                      budget: int = 300_000, certified_only: bool = True) -> Iterator[PyramidInstance]:
    """Pyramids with apex 0 plus up to ``extra`` random vertices, kept when
    the graph is even-hole-free, the apex is splendid and ends no
    cross-edge of an extended near-prism, and (by default) the strip
    system search certifies its result."""
    rng = random.Random(f"pyramid:{seed}")
    shapes = [(x, y, z) for x in lengths for y in lengths for z in lengths if x <= y <= z]
    shapes.append((min(lengths),) * 4)
    made = 0
    attempts = 0
    while made < count and attempts < 500 * count:
        attempts += 1
        G = pyramid_graph(rng.choice(shapes))
        for _ in range(rng.randint(1, extra)):
            G = G.add_vertex(_pyramid_attachment(G, rng))
        if not pyramid_hypotheses_hold(G, 0):
            continue
        res = search_pyramid_strip_system(G, 0, budget=budget, require_hypotheses=False)
        if res.system is None:
            continue
        if certified_only and res.maximality != OPTIMAL:
            continue
        made += 1
        yield PyramidInstance(G, 0, res.system)


def completed_strips_from_pyramids(instances) -> Iterator[tuple[Graph, CompletedStrip]]:
    """One completed strip per strip of each pyramid system, where the
    construction succeeds."""
    for inst in instances:
        for s in inst.system.strips:
            cs, _ = complete_strip(inst.graph, s, inst.apex)
            if cs is not None:
                yield inst.graph, cs


def completed_strips_from_trees(instances) -> Iterator[tuple[Graph, CompletedStrip]]:
    """For an optimal tree system, the strip of each alpha leaf-edge with
    the leaf side as A."""
    from ..strips.core import Strip

    for G, ctx in instances:
        adj = ctx.J.adjacency()
        for t in sorted(ctx.alpha):
            s = adj[t][0]
            A, B, C = ctx.system.strip_sets((min(s, t), max(s, t)))
            if t > s:
                A, B = B, A
            try:
                S = Strip(A, B, C)
            except ValueError:
                continue
            cs, _ = complete_strip(G, S, ctx.a)
            if cs is not None:
                yield G, cs


def optimal_tree_contexts(graphs, budget: int = 2_000_000) -> Iterator[tuple[Graph, CrossEdgeContext, str]]:
    for G, a, b in graphs:
        res = search_tree_strip_system(G, a, b, budget=budget)
        if res.context is not None:
            yield G, res.context, res.maximality


def has_three_outsiders(G: Graph, cs: CompletedStrip) -> bool:
    return three_outsiders(G, cs).bit_count() >= 3
