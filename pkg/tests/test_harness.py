import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ehl.detectors import is_even_hole_free
from ehl.graph import Graph
from ehl.harness.canonical import canonical_form
from ehl.harness.enumerate import (ALL_LABELED, CANONICAL, RANDOM, EnumerationError, EnumerationSpec,
                                   canonical_graphs, enumerate_graphs, labeled_graphs)
from ehl.harness.generators import trees_with_edges
from ehl.harness.report import VerificationReport
from ehl.harness.suites import SUITES, plan, run_suite
from ehl.results import failed, inapplicable, passed

# Computed by the Burnside oracle in oracles.py and frozen.
UNLABELLED_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
# Brute-force hole enumeration over the eleven 4-vertex classes; only C4 has an even hole.
EVEN_HOLE_FREE_ON_FOUR = 10


def test_canonical_counts_match_burnside():
    for n, want in UNLABELLED_COUNTS.items():
        assert oracles.burnside_count(n) == want
        assert len(canonical_graphs(n)) == want


def test_canonical_representatives_are_pairwise_non_isomorphic():
    for n in range(1, 6):
        reps = canonical_graphs(n)
        for G, H in itertools.combinations(reps, 2):
            if G.m == H.m:
                assert not oracles.permutation_isomorphic(G, H)


def test_even_hole_free_count_on_four_vertices():
    reps = canonical_graphs(4)
    assert sum(1 for G in reps if is_even_hole_free(G)) == EVEN_HOLE_FREE_ON_FOUR
    assert sum(1 for G in reps if not oracles.has_even_hole(G)) == EVEN_HOLE_FREE_ON_FOUR


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.data())
def test_canonical_form_is_invariant_under_relabelling(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = data.draw(st.permutations(range(n)))
    G = Graph.from_edges(n, edges)
    H = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])
    assert canonical_form(G) == canonical_form(H)


def test_tree_counts_match_networkx():
    for m in range(0, 9):
        want = sum(1 for _ in nx.nonisomorphic_trees(m + 1)) if m else 1
        assert len(trees_with_edges(m)) == want


def test_enumeration_modes_and_errors():
    assert sum(1 for _ in labeled_graphs(4)) == 2 ** 6
    spec = EnumerationSpec(5, RANDOM, count=7, seed=3)
    first = [G.rows for G in enumerate_graphs(spec)]
    assert len(first) == 7 and first == [G.rows for G in enumerate_graphs(spec)]
    assert sum(1 for _ in enumerate_graphs(EnumerationSpec(4, CANONICAL, filter="even-hole-free"))) == 10
    assert sum(1 for _ in enumerate_graphs(EnumerationSpec(3, ALL_LABELED, min_n=1))) == 1 + 2 + 8
    with pytest.raises(EnumerationError):
        list(enumerate_graphs(EnumerationSpec(3, "bogus")))
    with pytest.raises(EnumerationError):
        list(labeled_graphs(8))
    with pytest.raises(EnumerationError):
        plan("NOPE", EnumerationSpec(3))


def test_report_accounting_and_merge():
    G = Graph.from_edges(3, [(0, 1)])
    r = VerificationReport("X")
    r.record(G, passed())
    r.record(G, inapplicable("no"))
    r.record(G, failed(witness={"v": 1}, detail="d", caveat=True))
    r.record(G, failed(detail="e"))
    assert r.consistent and r.fails == 2 and r.alarms == 1
    assert r.violations[0]["graph"] == "B_"  # networkx.to_graph6_bytes
    s = VerificationReport("X")
    s.record(G, passed())
    s.bump("k", 2)
    r.merge(s)
    assert r.instances_tested == 5 and r.passes == 2 and r.counters == {"k": 2} and r.consistent
    assert "wall_time" not in r.to_json(timing=False)


SMALL = {
    "SUBGRAPHS": EnumerationSpec(5, ALL_LABELED),
    "MAIN": EnumerationSpec(6, CANONICAL, min_n=1),
    "HT_EHF": EnumerationSpec(8),
    "GETLOCAL": EnumerationSpec(8, count=2000, seed=1),
    "TREESTRUCT": EnumerationSpec(8, count=20),
    "SKEWPYR": EnumerationSpec(7, CANONICAL, min_n=5),
    "MAJORCLIQUE": EnumerationSpec(8, count=20),
    "FUNNIES": EnumerationSpec(8, count=20),
    "SPLENDIDPRISM": EnumerationSpec(8, count=10),
    "PYRSTRIP": EnumerationSpec(3, count=20),
    "GROWSTRIPS": EnumerationSpec(3, count=20),
    "GETCLIQUE": EnumerationSpec(3, count=20),
    "TRICHOTOMY": EnumerationSpec(6, CANONICAL, min_n=4),
    "STRIPTOBIP": EnumerationSpec(3, count=20),
    "CERTIFICATES": EnumerationSpec(6, RANDOM, count=60, seed=2),
}


def test_every_suite_has_a_small_spec():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("suite", SUITES)
def test_small_runs_are_clean_and_consistent(suite):
    rep = run_suite(suite, SMALL[suite])
    assert rep.consistent
    assert rep.instances_tested > 0
    assert rep.alarms == 0 and rep.budget_hits == 0
    assert rep.certificates_verified == rep.certificates
    assert rep.mutations_caught == rep.mutation_probes


@pytest.mark.parametrize("suite", ["SUBGRAPHS", "GETLOCAL", "PYRSTRIP", "TREESTRUCT"])
def test_repeated_runs_are_byte_identical(suite):
    a = run_suite(suite, SMALL[suite]).dumps(timing=False)
    b = run_suite(suite, SMALL[suite]).dumps(timing=False)
    assert a == b


def test_parallel_matches_serial():
    spec = EnumerationSpec(6, ALL_LABELED)
    serial = run_suite("SUBGRAPHS", spec, jobs=1).dumps(timing=False)
    parallel = run_suite("SUBGRAPHS", spec, jobs=2).dumps(timing=False)
    assert serial == parallel


def test_seed_changes_random_streams():
    a = run_suite("CERTIFICATES", EnumerationSpec(6, RANDOM, count=40, seed=1)).dumps(timing=False)
    b = run_suite("CERTIFICATES", EnumerationSpec(6, RANDOM, count=40, seed=2)).dumps(timing=False)
    assert a != b


def test_budget_hits_are_counted_not_raised():
    rep = run_suite("MAIN", EnumerationSpec(5, CANONICAL), budget=5)
    assert rep.budget_hits > 0 and rep.consistent
