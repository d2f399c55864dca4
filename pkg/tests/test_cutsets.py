import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import complete, cycle, path, short_pyramid, wheel
from ehl.cutsets import (NEIGHBOUR_TRAPPED, NOT_CONNECTED_OUTSIDE, SHORT_PYRAMID_APEX,
                         check_hole_neighbourhood_trichotomy, find_full_star_cutset, find_star_cutset, is_cutset,
                         is_splendid)
from ehl.detectors import Pyramid
from ehl.harness.enumerate import random_graphs

# Every neighbour subset S of the 5-wheel hub with {hub} + S a cutset,
# found by exhaustive subset search.
FIVE_WHEEL_HUB_STAR_CUTSETS = [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4),
                               (0, 1, 3), (0, 2, 3), (0, 2, 4), (1, 2, 4), (1, 3, 4)]


def test_is_cutset_examples():
    assert is_cutset(path(5), {2}) == (frozenset({0, 1}), frozenset({3, 4}))
    assert all(is_cutset(cycle(5), {v}) is None for v in range(5))
    assert is_cutset(cycle(5), range(5)) is None


def test_full_star_cutset_examples():
    w = find_full_star_cutset(path(5))
    assert w is not None and w.validate(path(5))
    assert w.centre in (1, 2, 3) and find_full_star_cutset(path(5), centre=2).cutset == {1, 2, 3}
    assert find_full_star_cutset(cycle(5)) is None
    assert find_full_star_cutset(cycle(6)) is None


def test_star_cutset_examples():
    P4 = path(4)
    w = find_star_cutset(P4, centre=1)
    assert w.cutset == {1} and set(w.sides) == {frozenset({0}), frozenset({2, 3})}
    assert find_star_cutset(complete(4)) is None


def test_five_wheel_hub():
    W = wheel(5)
    found = [S for k in range(6) for S in itertools.combinations(range(5), k)
             if is_cutset(W, {5, *S}) is not None]
    assert found == FIVE_WHEEL_HUB_STAR_CUTSETS
    w = find_star_cutset(W, centre=5)
    assert w.validate(W) and tuple(sorted(w.cutset - {5})) == FIVE_WHEEL_HUB_STAR_CUTSETS[0]


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**36 - 1))
def test_component_criterion_matches_exhaustive(n, seed):
    G = next(random_graphs(n, 1, seed))
    for v in range(n):
        exhaustive = find_star_cutset(G, centre=v)
        by_components = find_star_cutset(G, centre=v, degree_bound=-1)
        assert (exhaustive is None) == (by_components is None)
        for w in (exhaustive, by_components):
            if w is not None:
                assert w.validate(G) and w.centre == v


def test_splendid_examples():
    assert all(is_splendid(cycle(5), a).ok for a in range(5))
    v = is_splendid(complete(4), 0)
    assert not v.ok and v.failed_clause == NOT_CONNECTED_OUTSIDE and v.outside_empty
    v = is_splendid(short_pyramid(), 3)
    assert v.failed_clause == SHORT_PYRAMID_APEX and isinstance(v.witness, Pyramid)
    # a pendant neighbour of a sees nothing outside N[a]
    G = cycle(5).add_vertex([0])
    v = is_splendid(G, 0)
    assert v.failed_clause == NEIGHBOUR_TRAPPED and v.witness == 5
    with pytest.raises(ValueError):
        is_splendid(cycle(5), 5)


def test_trichotomy_examples():
    W = wheel(5)
    assert check_hole_neighbourhood_trichotomy(W, range(5), 5).status == "pass"
    G = cycle(6).add_vertex([])
    r = check_hole_neighbourhood_trichotomy(G, range(6), 6, assume_even_hole_free=True)
    assert r.status == "pass" and r.detail == "complete or anticomplete"
    with pytest.raises(ValueError):
        check_hole_neighbourhood_trichotomy(W, range(5), 0)
