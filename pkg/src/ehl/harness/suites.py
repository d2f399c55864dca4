"""Named verification suites.

Each suite walks an instance stream, checks one theorem per instance and
folds the outcomes into a :class:`VerificationReport`.  The stream is cut
into chunks that are pure functions of the spec, so a worker pool and a
serial loop produce the same report.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Iterator, Optional

from ..bisimplicial import check_main_theorem
from ..cutsets import check_hole_neighbourhood_trichotomy
from ..detectors import (DETECTORS, find_even_hole, find_near_prism, find_theta, find_wheel,
                         verify_certificate)
from ..graph import BudgetExhausted, Graph, bits, enumerate_holes, mask_of
from ..results import BUDGET, CheckResult, failed, inapplicable, passed
from ..strips.completed import check_striptobip
from ..strips.pyramid import check_apex_clique, check_growstrips, check_pyramid_attachment_theorem
from ..strips.tree import (check_funnies, check_major_clique, check_skewpyr, check_splendid_refinements,
                           classify_small_subgraph, is_local, major_vertices, nonlocal_pair, search_tree_strip_system,
                           small_components, validate_cross_edge, validate_jstrip)
from . import generators as gen
from .enumerate import (ALL_LABELED, CANONICAL, RANDOM, EnumerationError, EnumerationSpec, canonical_graphs,
                        graph_from_mask, pair_list, random_graphs)
from .report import VerificationReport

SUITES = (
    "SUBGRAPHS", "MAIN", "HT_EHF", "GETLOCAL", "TREESTRUCT", "SKEWPYR", "MAJORCLIQUE", "FUNNIES",
    "SPLENDIDPRISM", "PYRSTRIP", "GROWSTRIPS", "GETCLIQUE", "TRICHOTOMY", "STRIPTOBIP", "CERTIFICATES",
)

# How a suite reads EnumerationSpec: graph suites take n as the vertex
# bound; tree-family suites take n as the largest tree (in edges);
# pyramid-family suites take n as the most vertices added to a pyramid.
GRAPH_SUITES = ("SUBGRAPHS", "MAIN", "SKEWPYR", "TRICHOTOMY", "CERTIFICATES")
TREE_SUITES = ("HT_EHF", "GETLOCAL", "TREESTRUCT", "MAJORCLIQUE", "FUNNIES", "SPLENDIDPRISM")
PYRAMID_SUITES = ("PYRSTRIP", "GROWSTRIPS", "GETCLIQUE", "STRIPTOBIP")

DEFAULT_COUNTS = {"GETLOCAL": 100_000, "TREESTRUCT": 300, "MAJORCLIQUE": 300, "FUNNIES": 300,
                  "SPLENDIDPRISM": 300, "PYRSTRIP": 1000, "GROWSTRIPS": 1000, "GETCLIQUE": 1000,
                  "STRIPTOBIP": 400}

LABELED_CHUNK = 1 << 15
CANONICAL_CHUNK = 512
GENERATOR_CHUNK = 100
GETLOCAL_CHUNK = 10_000


@dataclass(frozen=True)
class Chunk:
    """A slice [start, stop) of the instance stream for one vertex count."""

    n: int
    start: int
    stop: int


def _count(suite: str, spec: EnumerationSpec) -> int:
    return spec.count or DEFAULT_COUNTS.get(suite, 0)


def _effective_spec(suite: str, spec: EnumerationSpec) -> EnumerationSpec:
    if suite in GRAPH_SUITES:
        return spec
    return replace(spec, count=_count(suite, spec))


def plan(suite: str, spec: EnumerationSpec) -> list[Chunk]:
    """Cut the instance stream of a suite into chunks."""
    if suite not in SUITES:
        raise EnumerationError(f"unknown suite {suite!r}")
    if suite in GRAPH_SUITES:
        out = []
        for n in spec.sizes():
            if spec.mode == ALL_LABELED:
                total, size = 1 << len(pair_list(n)), LABELED_CHUNK
                if n > 7:
                    raise EnumerationError("labelled enumeration is limited to n <= 7")
            elif spec.mode == CANONICAL:
                total, size = len(canonical_graphs(n)), CANONICAL_CHUNK
            elif spec.mode == RANDOM:
                total, size = spec.count, CANONICAL_CHUNK
            else:
                raise EnumerationError(f"unknown mode {spec.mode!r}")
            out += [Chunk(n, s, min(s + size, total)) for s in range(0, total, size)]
        return out
    if suite == "HT_EHF":
        return [Chunk(spec.n, 0, -1)]
    total = _count(suite, spec)
    size = GETLOCAL_CHUNK if suite == "GETLOCAL" else GENERATOR_CHUNK
    return [Chunk(spec.n, s, min(s + size, total)) for s in range(0, total, size)]


# ---------------------------------------------------------------------------
# instance streams


def _graphs(spec: EnumerationSpec, c: Chunk) -> Iterator[Graph]:
    if spec.mode == ALL_LABELED:
        pairs = pair_list(c.n)
        for mask in range(c.start, c.stop):
            yield graph_from_mask(c.n, mask, pairs)
    elif spec.mode == CANONICAL:
        yield from canonical_graphs(c.n)[c.start:c.stop]
    else:
        yield from itertools.islice(random_graphs(c.n, spec.count, spec.seed), c.start, c.stop)


def _ehf(rep: VerificationReport, G: Graph, budget: Optional[int]) -> bool:
    """Filter on the even-hole-free hypothesis; a graph whose test runs out
    of budget is recorded as a budget hit and skipped."""
    try:
        return find_even_hole(G, budget=budget) is None
    except BudgetExhausted as e:
        rep.record(G, CheckResult(BUDGET, detail=str(e)))
        return False


def _holes(rep: VerificationReport, G: Graph, budget: Optional[int]) -> list[tuple[int, ...]]:
    try:
        return list(enumerate_holes(G, budget=budget))
    except BudgetExhausted as e:
        rep.record(G, CheckResult(BUDGET, detail=str(e)))
        return []


def _certify(rep: VerificationReport, G: Graph, cert, all_pairs: bool = False) -> bool:
    """Verify a detector's certificate and check that toggling a pair inside
    its span breaks it (one deterministic pair, or every pair)."""
    rep.certificates += 1
    ok = verify_certificate(G, cert)
    rep.certificates_verified += ok
    span = cert.span
    pairs = list(itertools.combinations(span, 2))
    if not all_pairs:
        pairs = pairs[rep.certificates % len(pairs):][:1]
    for u, v in pairs:
        rep.mutation_probes += 1
        rep.mutations_caught += not verify_certificate(G.toggle_edge(u, v), cert)
    return ok


def _guard(rep: VerificationReport, G: Graph, fn: Callable[[], CheckResult], label=None) -> None:
    try:
        res = fn()
    except BudgetExhausted as e:
        res = CheckResult(BUDGET, detail=str(e))
    rep.record(G, res, label)


# ---------------------------------------------------------------------------
# graph suites


def _subgraphs(rep, spec, c, budget):
    for G in _graphs(spec, c):
        def check(G=G):
            hole = find_even_hole(G, budget=budget)
            if hole is not None:
                rep.bump("even hole")
                if not _certify(rep, G, hole):
                    return failed(witness=hole, detail="even-hole certificate does not verify")
                return passed()
            for name, find in (("theta", find_theta), ("near-prism", find_near_prism),
                               ("even-wheel", lambda H, budget: find_wheel(H, even_only=True, budget=budget))):
                cert = find(G, budget=budget)
                if cert is not None:
                    _certify(rep, G, cert)
                    return failed(witness=cert, detail=f"{name} in a graph with no even hole")
            rep.bump("even-hole-free")
            return passed()
        _guard(rep, G, check)


def _main(rep, spec, c, budget):
    for G in _graphs(spec, c):
        if not _ehf(rep, G, budget):
            continue
        rep.bump("graphs")
        cliques = [()] + [(v,) for v in range(G.n)] + list(G.edges())
        for K in cliques:
            v = check_main_theorem(G, K, assume_even_hole_free=True)
            if v.status == "inapplicable":
                res = inapplicable(v.reason)
            elif v.holds:
                res = passed(witness=v.witness)
                rep.bump(f"holds |K|={len(K)}")
            else:
                res = failed(witness=v.to_json(), detail=v.reason)
            rep.record(G, res, {"K": list(K)})


def _skewpyr_configs(G: Graph, hole: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], int, int]]:
    """Every rotation of the hole and every pair a < b of nonadjacent vertices
    off it, both adjacent to its last and first vertices and each with at
    least three neighbours on it.  Reversal swaps the two triangles, which
    the check treats symmetrically, so one direction suffices."""
    hm = mask_of(hole)
    L = len(hole)
    for i in range(L):
        rot = hole[i:] + hole[:i]
        common = G.rows[rot[0]] & G.rows[rot[-1]] & ~hm
        cand = [x for x in bits(common) if (G.rows[x] & hm).bit_count() >= 3]
        for a, b in itertools.combinations(cand, 2):
            if not G.has_edge(a, b):
                yield rot, a, b


def _skewpyr(rep, spec, c, budget):
    for G in _graphs(spec, c):
        if not _ehf(rep, G, budget):
            continue
        rep.bump("graphs")
        for hole in _holes(rep, G, budget):
            for rot, a, b in _skewpyr_configs(G, hole):
                _guard(rep, G, lambda: check_skewpyr(G, rot, a, b, assume_even_hole_free=True),
                       {"hole": rot, "a": a, "b": b})


def _trichotomy(rep, spec, c, budget):
    for G in _graphs(spec, c):
        if not _ehf(rep, G, budget):
            continue
        rep.bump("graphs")
        for hole in _holes(rep, G, budget):
            for a in range(G.n):
                if a not in hole:
                    _guard(rep, G, lambda: check_hole_neighbourhood_trichotomy(G, hole, a, assume_even_hole_free=True),
                           {"hole": hole, "a": a})


def _certificates(rep, spec, c, budget):
    """Every detector on every graph; each certificate must verify and every
    single-pair toggle inside its span must be caught."""
    for G in _graphs(spec, c):
        def check(G=G):
            bad = []
            for name in sorted(DETECTORS):
                cert = DETECTORS[name](G, budget=budget)
                if cert is not None:
                    rep.bump(name)
                    if not _certify(rep, G, cert, all_pairs=True):
                        bad.append(name)
            if bad:
                return failed(witness=bad, detail="certificates that do not verify")
            return passed()
        _guard(rep, G, check)


# ---------------------------------------------------------------------------
# tree-family suites


def _ht_ehf(rep, spec, c, budget):
    for inst in gen.extended_tree_line_graphs(max_edges=spec.n):
        G, ctx = inst.graph, inst.context
        label = {"tree": [list(e) for e in inst.tree.edges], "A": sorted(inst.bipartition[0])}
        hole = find_even_hole(G, budget=budget)
        if hole is not None:
            _certify(rep, G, hole)
            res = failed(witness=hole, detail="H(T) has an even hole")
        else:
            v1, v2 = validate_jstrip(G, ctx.system), validate_cross_edge(G, ctx)
            if not v1:
                res = failed(witness=v1.to_json(), detail="J-strip system invalid")
            elif not v2:
                res = failed(witness=v2.to_json(), detail="cross-edge conditions invalid")
            else:
                res = passed()
        rep.record(G, res, label)


@dataclass(frozen=True)
class _LocalCase:
    graph: Graph
    context: object
    domain: tuple[int, ...]


def _local_cases(max_edges: int) -> list[_LocalCase]:
    out = []
    for inst in gen.extended_tree_line_graphs(max_edges=max_edges):
        ctx = inst.context
        out.append(_LocalCase(inst.graph, ctx, tuple(sorted(ctx.system.vertices | {ctx.a, ctx.b}))))
    return out


def _getlocal(rep, spec, c, budget):
    cases = _local_cases(spec.n)
    for i in range(c.start, c.stop):
        rng = random.Random(f"getlocal:{spec.seed}:{i}")
        case = cases[rng.randrange(len(cases))]
        ctx = case.context
        X = rng.sample(case.domain, rng.randint(2, len(case.domain)))
        if ctx.a in X and ctx.b in X:
            X.remove(rng.choice((ctx.a, ctx.b)))
        label = {"X": sorted(X)}
        if is_local(X, ctx):
            rep.record(case.graph, inapplicable("X is local"), label)
            continue
        pair = nonlocal_pair(X, ctx)
        if pair is None or not set(pair) <= set(X) or is_local(pair, ctx):
            rep.record(case.graph, failed(witness={"X": sorted(X), "pair": pair},
                                          detail="no non-local pair returned"), label)
        else:
            rep.record(case.graph, passed(witness=pair))


def _tree_stream(spec: EnumerationSpec, c: Chunk, splendid_only: bool = False):
    graphs = gen.augmented_tree_instances(spec.seed, spec.count, max_edges=spec.n, splendid_only=splendid_only)
    return itertools.islice(graphs, c.start, c.stop)


def _tree_check(suite: str, G: Graph, ctx) -> CheckResult:
    if suite == "TREESTRUCT":
        comps = small_components(G, ctx)
        if not comps:
            return inapplicable("no small components")
        for F in comps:
            r = classify_small_subgraph(G, ctx, F)
            if not r.ok:
                return r
        return passed(caveat=ctx.caveat, info={"components": len(comps)})
    if suite == "MAJORCLIQUE":
        return check_major_clique(G, ctx)
    if suite == "FUNNIES":
        r = check_funnies(G, ctx)
        if r.ok and not r.info.get("components"):
            return inapplicable("no component touches a non-major common neighbour", caveat=ctx.caveat)
        return r
    return check_splendid_refinements(G, ctx)


def _tree_suite(rep, spec, c, budget, suite):
    for G, a, b in _tree_stream(spec, c, splendid_only=suite == "SPLENDIDPRISM"):
        res = search_tree_strip_system(G, a, b, budget=budget)
        if res.context is None:
            if res.maximality == "unknown":
                rep.record(G, CheckResult(BUDGET, detail="no system within budget"))
            else:
                rep.record(G, inapplicable("no extended tree line-graph with cross-edge ab"))
            continue
        ctx = res.context
        rep.bump(res.maximality)
        if small_components(G, ctx):
            rep.bump("with small components")
        if len(major_vertices(G, ctx)) >= 2:
            rep.bump("two or more major vertices")
        _guard(rep, G, lambda: _tree_check(suite, G, res.context), {"a": a, "b": b})


# ---------------------------------------------------------------------------
# pyramid-family suites


def _pyramid_stream(spec: EnumerationSpec, c: Chunk, budget: Optional[int]):
    kw = {} if budget is None else {"budget": budget}
    stream = gen.pyramid_instances(spec.seed, spec.count, extra=spec.n, **kw)
    return itertools.islice(stream, c.start, c.stop)


PYRAMID_CHECKS = {
    "PYRSTRIP": check_pyramid_attachment_theorem,
    "GROWSTRIPS": check_growstrips,
    "GETCLIQUE": check_apex_clique,
}


def _pyramid_suite(rep, spec, c, budget, suite):
    check = PYRAMID_CHECKS[suite]
    for inst in _pyramid_stream(spec, c, budget):
        rep.bump(f"k={inst.system.k}")
        _guard(rep, inst.graph, lambda: check(inst.graph, inst.system))


def _striptobip(rep, spec, c, budget):
    for inst in _pyramid_stream(spec, c, budget):
        for G, cs in gen.completed_strips_from_pyramids([inst]):
            rep.bump("completed strips")
            _guard(rep, G, lambda: check_striptobip(G, cs, assume_even_hole_free=True), cs.to_json())


# ---------------------------------------------------------------------------
# dispatch


def _run_chunk(suite: str, spec: EnumerationSpec, c: Chunk, budget: Optional[int]) -> VerificationReport:
    rep = VerificationReport(suite, spec.to_json())
    t0 = time.perf_counter()
    if suite == "SUBGRAPHS":
        _subgraphs(rep, spec, c, budget)
    elif suite == "MAIN":
        _main(rep, spec, c, budget)
    elif suite == "SKEWPYR":
        _skewpyr(rep, spec, c, budget)
    elif suite == "TRICHOTOMY":
        _trichotomy(rep, spec, c, budget)
    elif suite == "CERTIFICATES":
        _certificates(rep, spec, c, budget)
    elif suite == "HT_EHF":
        _ht_ehf(rep, spec, c, budget)
    elif suite == "GETLOCAL":
        _getlocal(rep, spec, c, budget)
    elif suite in TREE_SUITES:
        _tree_suite(rep, spec, c, budget, suite)
    elif suite == "STRIPTOBIP":
        _striptobip(rep, spec, c, budget)
    elif suite in PYRAMID_CHECKS:
        _pyramid_suite(rep, spec, c, budget, suite)
    else:
        raise EnumerationError(f"unknown suite {suite!r}")
    rep.wall_time = time.perf_counter() - t0
    return rep


def _star(args):
    return _run_chunk(*args)


def run_suite(suite: str, spec: EnumerationSpec, jobs: int = 1, budget: Optional[int] = None) -> VerificationReport:
    """Run a suite over its instance stream and merge the chunk reports in
    stream order."""
    spec = _effective_spec(suite, spec)
    chunks = plan(suite, spec)
    out = VerificationReport(suite, spec.to_json())
    args = [(suite, spec, c, budget) for c in chunks]
    t0 = time.perf_counter()
    if jobs <= 1 or len(chunks) <= 1:
        parts: Iterable[VerificationReport] = map(_star, args)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        parts = pool.map(_star, args)
    try:
        for part in parts:
            out.merge(part)
    finally:
        if jobs > 1 and len(chunks) > 1:
            pool.shutdown()
    out.wall_time = time.perf_counter() - t0
    return out
