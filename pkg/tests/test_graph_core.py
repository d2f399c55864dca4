import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import complete, complete_bipartite, cycle, path
from ehl.graph import (Adjacency, Budget, BudgetExhausted, Graph, GraphError, Path, Tree, adjacency_between,
                       components, enumerate_induced_paths, induced, is_clique, is_connected, is_hole)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def graph_and_subset(draw, max_n=9):
    G = draw(graphs(max_n))
    S = draw(st.sets(st.integers(0, max(G.n - 1, 0)))) if G.n else set()
    return G, frozenset(S)


def test_rejects_self_loop_and_asymmetry():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_induced_examples():
    C5 = cycle(5)
    assert induced(C5, range(5)).graph == C5
    tri = induced(complete(4), {0, 2, 3})
    assert tri.graph == complete(3)
    assert tri.vertices == (0, 2, 3)
    assert induced(path(5), {0, 2, 4}).graph.m == 0
    with pytest.raises(GraphError):
        induced(C5, {7})


def test_components_examples():
    assert components(cycle(5), range(5)) == [frozenset(range(5))]
    assert components(path(5), {0, 1, 3, 4}) == [frozenset({0, 1}), frozenset({3, 4})]
    assert components(cycle(5), ()) == []
    assert is_connected(cycle(5), ())


def test_is_clique_examples():
    assert is_clique(complete(4), {0, 1, 3})
    assert is_clique(cycle(5), {1, 2})
    assert not is_clique(cycle(5), {0, 2})
    assert is_clique(cycle(5), ()) and is_clique(cycle(5), {3})


def test_adjacency_between_examples():
    assert adjacency_between(complete(4), {0}, {1, 2}) is Adjacency.COMPLETE
    assert adjacency_between(cycle(5), {1}, {3}) is Adjacency.ANTICOMPLETE
    P3 = path(3)
    assert adjacency_between(P3, {0, 2}, {1}) is Adjacency.COMPLETE
    assert adjacency_between(P3, {0}, {2}) is Adjacency.ANTICOMPLETE
    assert adjacency_between(P3, {0, 1}, {2}) is Adjacency.MIXED
    assert adjacency_between(P3, (), {2}) is Adjacency.VACUOUS
    with pytest.raises(GraphError):
        adjacency_between(P3, {0, 1}, {1})


def test_enumerate_induced_paths_examples():
    C5 = cycle(5)
    got = [p.verts for p in enumerate_induced_paths(C5, 0, 1, {2, 3, 4})]
    # the way around is a path, but the edge 0-1 is a chord of it
    assert got == [(0, 1)]
    assert Path((0, 4, 3, 2, 1)).is_path(C5) and not Path((0, 4, 3, 2, 1)).is_induced(C5)
    K23 = complete_bipartite(2, 3)
    got = [p.verts for p in enumerate_induced_paths(K23, 0, 1, range(2, 5))]
    assert sorted(got) == [(0, 2, 1), (0, 3, 1), (0, 4, 1)]
    assert list(enumerate_induced_paths(path(5), 0, 4, ())) == []


def test_enumerate_induced_paths_budget_is_distinguishable():
    G = complete_bipartite(2, 6)
    with pytest.raises(BudgetExhausted):
        list(enumerate_induced_paths(G, 0, 1, range(2, 8), budget=Budget(2)))


def test_is_hole():
    C6 = cycle(6)
    assert is_hole(C6, range(6))
    assert not is_hole(C6.toggle_edge(0, 3), range(6))
    assert not is_hole(cycle(3), range(3))


def test_tree_shape():
    T = Tree.from_edges([(0, 1), (1, 2), (2, 3), (2, 4), (0, 5)])
    assert T.leaves() == (3, 4, 5)
    J, branches = T.shape()
    assert sorted(J.verts) == [2, 3, 4, 5]
    assert branches[(2, 5)] == (2, 1, 0, 5)
    with pytest.raises(GraphError):
        Tree.from_edges([(0, 1), (1, 2), (2, 0)])


@given(graph_and_subset(), st.data())
def test_adjacency_between_is_symmetric(gs, data):
    G, S = gs
    A = frozenset(data.draw(st.sets(st.sampled_from(sorted(S)))) if S else set())
    B = S - A
    assert adjacency_between(G, A, B) == adjacency_between(G, B, A)


@given(graph_and_subset())
def test_components_partition_and_are_anticomplete(gs):
    G, S = gs
    comps = components(G, S)
    assert frozenset().union(*comps) == S
    for X, Y in itertools.combinations(comps, 2):
        assert adjacency_between(G, X, Y) is Adjacency.ANTICOMPLETE


@settings(max_examples=60)
@given(graphs(max_n=7), st.data())
def test_enumerated_paths_are_induced_and_distinct(G, data):
    if G.n < 2:
        return
    u, v = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=2, unique=True))
    allowed = set(range(G.n)) - {u, v}
    seen = set()
    for p in enumerate_induced_paths(G, u, v, allowed):
        assert p.is_induced(G) and p.ends == (u, v)
        assert p.verts not in seen
        seen.add(p.verts)


@given(graph_and_subset())
def test_induced_is_idempotent(gs):
    G, S = gs
    H = induced(G, S).graph
    assert induced(H, range(H.n)).graph == H


def test_path_flags():
    P = Path((0, 1, 2))
    assert P.length == 2 and P.interior == (1,)
    assert P.is_induced(path(3))
    assert not P.is_induced(cycle(3))
