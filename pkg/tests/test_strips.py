import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import cycle, path, prism
from ehl.bisimplicial import is_bisimplicial
from ehl.detectors import find_even_hole, find_extended_near_prism, is_even_hole_free
from ehl.graph import Graph, GraphError, Tree
from ehl.harness.generators import augmented_tree_instances, extended_tree_line_graphs, pyramid_graph
from ehl.strips import (LOCALLY_MAXIMAL, OPTIMAL, CompletedStrip, CrossEdgeContext, JStripSystem, Strip,
                        TreeConditionError, attachments, build_extended_tree_line_graph, check_apex_clique,
                        check_completed_strip, check_funnies, check_growstrips, check_major_clique,
                        check_pyramid_attachment_theorem, check_skewpyr, check_splendid_refinements,
                        check_striptobip, classify_apex_neighbour, classify_small_subgraph, complete_strip, is_indecomposable,
                        is_local,
                        is_rung, major_vertices, nonlocal_pair, search_pyramid_strip_system,
                        search_tree_strip_system, valid_bipartitions, validate_cross_edge, validate_jstrip,
                        validate_pyramid_system, validate_strip)
from ehl.strips.pyramid import pyramid_system_from_paths, single_vertex_extensions
from ehl.strips.tree import single_vertex_augmentations

# Two vertices of degree three joined by an edge, with legs 0-2, 0-3-6, 1-4 and
# 1-5-7.  Under its colour classes it is the smallest tree whose H(T) both
# satisfies the leaf condition and contains an extended near-prism.
DOUBLE_STAR = Tree.from_edges([(0, 1), (0, 2), (0, 3), (3, 6), (1, 4), (1, 5), (5, 7)])
SPIDER = Tree.from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])

# A pyramid with three paths of length three (apex 0, base 3, 6, 9) and a
# vertex 10 adjacent to 0, 1, 4, 7 and to 2, 3, which keeps the apex
# splendid.  Found by search and frozen.
ALPHA_EDGES = [(0, 1), (0, 4), (0, 7), (0, 10), (1, 2), (1, 10), (2, 3), (2, 10), (3, 6), (3, 9), (3, 10), (4, 5),
               (4, 10), (5, 6), (6, 9), (7, 8), (7, 10), (8, 9)]


def double_star():
    return build_extended_tree_line_graph(DOUBLE_STAR, valid_bipartitions(DOUBLE_STAR)[0])


def bare_pyramid(lengths=(3, 3, 3)):
    G = pyramid_graph(lengths)
    S = search_pyramid_strip_system(G, 0).system
    return G, S


# ---------------------------------------------------------------------------
# strips and rungs


def test_is_rung_examples():
    P3 = path(3)
    S = Strip({0}, {2}, {1})
    assert is_rung(P3, S, (0, 1, 2))
    assert not is_rung(P3, S, (0, 2))
    assert is_rung(Graph.from_edges(1, []), Strip({0}, {0}), (0,))
    assert not is_rung(P3, S, (2, 1, 0))


def test_validate_strip_examples():
    P3 = path(3)
    assert validate_strip(P3, {0}, {2}, {1})
    v = validate_strip(P3.add_vertex([]), {0}, {2}, {1, 3})
    assert not v and v.uncovered == {3}
    with pytest.raises(GraphError):
        validate_strip(P3, (), {2})
    G, ctx = double_star()
    for e in ctx.J.edges:
        A, B, C = ctx.system.strip_sets(e)
        assert validate_strip(G, A, B, C)


# ---------------------------------------------------------------------------
# extended tree line-graphs


def test_double_star_line_graph():
    G, ctx = double_star()
    assert G.n == 9 and is_even_hole_free(G)
    assert validate_jstrip(G, ctx.system) and validate_cross_edge(G, ctx)
    assert find_extended_near_prism(G, cross_edge=(ctx.a, ctx.b)) is not None


def test_spider_and_path_trees_are_rejected():
    bp = valid_bipartitions(SPIDER)
    assert bp == []
    col = ({0, 2, 4, 6}, {1, 3, 5})
    with pytest.raises(TreeConditionError) as exc:
        build_extended_tree_line_graph(SPIDER, col)
    assert exc.value.code == "component-condition"
    G, _ = build_extended_tree_line_graph(SPIDER, col, strict=False)
    assert G.n == 8 and is_even_hole_free(G)
    P = Tree.from_edges([(0, 1), (1, 2), (2, 3)])
    with pytest.raises(TreeConditionError) as exc:
        build_extended_tree_line_graph(P, ({0, 2}, {1, 3}))
    assert exc.value.code == "too-few-leaves"


def test_non_proper_bipartition_rejected():
    with pytest.raises(TreeConditionError) as exc:
        build_extended_tree_line_graph(DOUBLE_STAR, (set(range(4)), set(range(4, 8))))
    assert exc.value.code == "not-a-bipartition"


def test_every_small_extended_tree_line_graph_validates():
    for inst in extended_tree_line_graphs(8):
        assert is_even_hole_free(inst.graph)
        assert validate_jstrip(inst.graph, inst.context.system)
        assert validate_cross_edge(inst.graph, inst.context)


def test_moving_a_vertex_between_edge_sets_breaks_the_system():
    G, ctx = double_star()
    Me = dict(ctx.system.Me)
    Me[(0, 2)] = Me[(0, 2)] | {0}  # 0 already lies in the central edge set
    v = validate_jstrip(G, JStripSystem(ctx.J, Me, ctx.system.Mu))
    assert not v and v.bullet == 1
    Me = dict(ctx.system.Me)
    Me[(0, 1)], Me[(0, 2)] = frozenset(), Me[(0, 2)] | {0}
    assert not validate_jstrip(G, JStripSystem(ctx.J, Me, ctx.system.Mu))


def test_two_alpha_leaves_at_one_vertex_fire_the_cross_edge_check():
    G, ctx = double_star()
    # J-vertex 0 has leaf neighbours 2 (beta) and 6 (alpha); put both in alpha
    bad = CrossEdgeContext(ctx.system, ctx.a, ctx.b, ctx.alpha | {2}, ctx.beta - {2})
    v = validate_cross_edge(G, bad)
    assert not v and v.bullet == 2 and v.witness == 0


# ---------------------------------------------------------------------------
# locality


def test_is_local_examples():
    G, ctx = double_star()
    assert is_local({2, 5}, ctx)  # M_e of the leg 0-3-6
    assert not is_local({ctx.a, ctx.b}, ctx)
    t = min(ctx.alpha)
    assert is_local({ctx.a, *ctx.hub(t)}, ctx)
    assert is_local({ctx.b, *ctx.hub(min(ctx.beta))}, ctx)
    with pytest.raises(ValueError):
        is_local({99}, ctx)


def test_nonlocal_pair_examples():
    G, ctx = double_star()
    # 1 lies in M_(0,2) only, 3 in M_(1,4) only, and the edges are disjoint
    assert nonlocal_pair({1, 3}, ctx) == (1, 3)
    assert nonlocal_pair(ctx.hub(0), ctx) is None
    assert nonlocal_pair({ctx.a, ctx.b, 1, 3}, ctx) is None


@settings(max_examples=200)
@given(st.data())
def test_locality_is_closed_under_subsets(data):
    G, ctx = double_star()
    dom = sorted(ctx.system.vertices | {ctx.a, ctx.b})
    X = data.draw(st.sets(st.sampled_from(dom)))
    Y = data.draw(st.sets(st.sampled_from(sorted(X)))) if X else set()
    if is_local(X, ctx):
        assert is_local(Y, ctx)
    if not is_local(X, ctx) and not {ctx.a, ctx.b} <= X:
        pair = nonlocal_pair(X, ctx)
        assert pair is not None and not is_local(pair, ctx)


# ---------------------------------------------------------------------------
# tree strip system search and the checks built on it


def test_search_recovers_the_canonical_system():
    G, ctx = double_star()
    res = search_tree_strip_system(G, ctx.a, ctx.b)
    assert res.maximality == OPTIMAL and res.context.system.vertices == ctx.system.vertices
    assert validate_jstrip(G, res.context.system) and validate_cross_edge(G, res.context)


def test_search_without_an_extended_tree_line_graph():
    P = prism()
    for u, v in P.edges():
        assert search_tree_strip_system(P, u, v).context is None


def test_search_reports_budget_exhaustion():
    G, ctx = double_star()
    res = search_tree_strip_system(G, ctx.a, ctx.b, budget=3)
    assert res.context is None and res.report["budget"] == "exhausted"


def test_pendant_on_an_inner_hub_is_a_local_small_component():
    G, ctx = double_star()
    H = G.add_vertex([0])  # 0 lies in the hubs of both inner J-vertices
    res = search_tree_strip_system(H, ctx.a, ctx.b)
    assert res.context.system.vertices == ctx.system.vertices
    r = classify_small_subgraph(H, res.context, {H.n - 1})
    assert r.ok and r.info["touches"] == []
    assert classify_small_subgraph(H, res.context, ()).status == "inapplicable"


def test_component_touching_both_ends_lies_in_a_leaf_hub():
    G, ctx = double_star()
    t = min(ctx.alpha)
    x = min(ctx.hub(t))
    # the path a-9-10-11-b closes an odd hole with the cross-edge
    H = G.add_vertex([ctx.a, x])
    H = H.add_vertex([H.n - 1])
    H = H.add_vertex([H.n - 1, ctx.b])
    assert is_even_hole_free(H)
    res = search_tree_strip_system(H, ctx.a, ctx.b)
    r = classify_small_subgraph(H, res.context, {9, 10, 11})
    assert r.ok and r.info["touches"] == [ctx.a, ctx.b] and r.info["X"] == [x]


def test_major_vertex_examples():
    G, ctx = double_star()
    assert major_vertices(G, ctx) == frozenset()
    central = min(ctx.system.Me[(0, 1)])
    H = G.add_vertex([ctx.a, ctx.b, central])
    assert major_vertices(H, ctx) == {H.n - 1}
    assert check_major_clique(H, ctx).ok
    H = G.add_vertex([ctx.a, ctx.b])
    assert H.n - 1 in ctx.common_neighbours(H) and major_vertices(H, ctx) == frozenset()


def test_two_nonadjacent_majors_fail_the_clique_check():
    G, ctx = double_star()
    central = min(ctx.system.Me[(0, 1)])
    H = G.add_vertex([ctx.a, ctx.b, central]).add_vertex([ctx.a, ctx.b, central])
    r = check_major_clique(H, ctx)
    assert not r.ok and r.witness == {"nonadjacent": (9, 10)}
    assert find_even_hole(H) is not None


def test_funnies_examples():
    G, ctx = double_star()
    assert check_funnies(G, ctx).ok and check_funnies(G, ctx).info["components"] == 0
    H = G.add_vertex([ctx.a, ctx.b])
    H = H.add_vertex([H.n - 1])
    r = check_funnies(H, ctx)
    assert r.ok and r.info["components"] == 1


def test_splendid_refinements():
    G, ctx = double_star()
    H = G.add_vertex([ctx.a])  # a pendant neighbour traps a
    assert check_splendid_refinements(H, ctx).status == "inapplicable"
    G, a, b = next(augmented_tree_instances(0, 1, splendid_only=True))
    res = search_tree_strip_system(G, a, b)
    r = check_splendid_refinements(G, res.context)
    assert r.ok and r.caveat is (res.maximality != OPTIMAL)


@pytest.mark.parametrize("seed", range(3))
def test_optimal_systems_admit_no_single_vertex_augmentation(seed):
    for G, a, b in augmented_tree_instances(seed, 15):
        res = search_tree_strip_system(G, a, b)
        if res.maximality != OPTIMAL:
            assert res.maximality == LOCALLY_MAXIMAL
            continue
        for cand in single_vertex_augmentations(G, res.context):
            assert not (validate_jstrip(G, cand.system) and validate_cross_edge(G, cand))


# ---------------------------------------------------------------------------
# the hole lemma for two nonadjacent vertices


def test_skewpyr_constructed_instance():
    hole = (0, 1, 2, 3, 4)
    G = cycle(5).add_vertex([3, 4, 0]).add_vertex([4, 0, 1])
    assert is_even_hole_free(G)
    assert check_skewpyr(G, hole, 5, 6).ok


def test_skewpyr_preconditions():
    hole = (0, 1, 2, 3, 4)
    G = cycle(5).add_vertex([3, 4, 0]).add_vertex([4, 0, 1])
    assert check_skewpyr(G.toggle_edge(5, 6), hole, 5, 6).status == "inapplicable"
    assert check_skewpyr(G, (0, 2, 1, 3, 4), 5, 6).status == "inapplicable"
    # four neighbours on the hole forces an even hole somewhere
    H = cycle(5).add_vertex([2, 3, 4, 0]).add_vertex([4, 0, 1])
    assert check_skewpyr(H, hole, 5, 6).status == "inapplicable"
    assert check_skewpyr(H, hole, 5, 6, assume_even_hole_free=True).status == "fail"


# ---------------------------------------------------------------------------
# pyramid strip systems


def test_validate_pyramid_system_examples():
    G = pyramid_graph((3, 3, 3))
    S = pyramid_system_from_paths(0, [(0, 1, 2, 3), (0, 4, 5, 6), (0, 7, 8, 9)])
    assert validate_pyramid_system(G, S)
    v = validate_pyramid_system(G.toggle_edge(3, 6), S)
    assert not v
    v = validate_pyramid_system(G.toggle_edge(0, 2), S)
    assert not v


def test_search_on_bare_pyramid():
    G, S = bare_pyramid((2, 2, 2))
    assert S.k == 3 and S.maximality == OPTIMAL
    assert all(len(s.A) == len(s.B) == 1 and not s.C for s in S.strips)
    assert check_apex_clique(G, S).ok and check_apex_clique(G, S).info["set"] == []
    assert check_pyramid_attachment_theorem(G, S).ok
    assert check_growstrips(G, S).ok


def test_search_inapplicable_without_pyramid():
    res = search_pyramid_strip_system(cycle(5), 0)
    assert res.system is None and res.reason == "no pyramid has apex a"


def test_alpha_vertex():
    G = Graph.from_edges(11, ALPHA_EDGES)
    assert is_even_hole_free(G)
    res = search_pyramid_strip_system(G, 0)
    assert res.maximality == OPTIMAL and 10 not in res.system.vertices
    assert classify_apex_neighbour(G, res.system, 10).kind == "alpha"
    assert check_growstrips(G, res.system).ok and check_apex_clique(G, res.system).ok


def test_alpha_prime_and_beta_by_construction():
    G, S = bare_pyramid()
    # beta for the first strip: adjacent to the apex and to the middles of the other two paths
    H = G.add_vertex([0, 5, 8])
    t = classify_apex_neighbour(H, S, H.n - 1)
    assert (t.kind, t.index) == ("beta", 0)
    # alpha' for the first strip: sees A of the others and a component hanging off C_1
    H = G.add_vertex([2])
    H = H.add_vertex([0, 4, 7, H.n - 1])
    t = classify_apex_neighbour(H, S, H.n - 1)
    assert (t.kind, t.index) == ("alpha'", 0)
    with pytest.raises(ValueError):
        classify_apex_neighbour(G, S, 1)


def test_attachments_on_bare_pyramid():
    G, S = bare_pyramid()
    H = G.add_vertex([2]).add_vertex([5, 8])
    assert attachments(H, S, {10}) == {2}
    assert attachments(H, S, {10, 11}) == {2, 5, 8}
    assert attachments(H, S, ()) == frozenset()
    with pytest.raises(ValueError):
        attachments(H, S, {1})


@pytest.mark.parametrize("edges, n", [(ALPHA_EDGES, 11), (pyramid_graph((2, 3, 3)).edges(), 9)])
def test_pyramid_search_certificate_is_maximal(edges, n):
    G = Graph.from_edges(n, edges)
    S = search_pyramid_strip_system(G, 0).system
    assert S.maximality == OPTIMAL
    for cand in single_vertex_extensions(G, S):
        assert not (validate_pyramid_system(G, cand) and is_indecomposable(G, cand))


# ---------------------------------------------------------------------------
# completed strips


def test_completed_strip_from_bare_pyramid():
    G, S = bare_pyramid()
    for s in S.strips:
        cs, why = complete_strip(G, s, 0)
        assert cs is not None, why
        assert check_completed_strip(G, cs)
        assert cs.Z == {0} and cs.D == frozenset()
        r = check_striptobip(G, cs)
        assert r.ok and is_bisimplicial(G, r.witness) and r.witness in cs.core


def test_completed_strip_mutations():
    G, S = bare_pyramid()
    cs, _ = complete_strip(G, S.strips[0], 0)
    door = cs.backdoors[0]
    # a chord across the backdoor
    chorded = G.toggle_edge(door[0], door[2]) if len(door) > 2 else None
    if chorded is not None:
        assert not check_completed_strip(chorded, cs)
    bogus = CompletedStrip(cs.strip, cs.a, cs.D, cs.Z | {5}, {**cs.backdoors, 5: (5, 6)})
    v = check_completed_strip(G, bogus)
    assert not v and v.bullet == 4
    H = G.add_vertex([0, 1]).add_vertex([0, 1])
    cs2, why = complete_strip(H, S.strips[0], 0)
    assert cs2 is None and why == "Z is not a clique"


def test_striptobip_needs_three_outsiders():
    C5 = cycle(5)
    cs, _ = complete_strip(C5, Strip({1}, {2}), 0)
    assert check_completed_strip(C5, cs)
    assert check_striptobip(C5, cs).status == "inapplicable"
