"""Graph streams for the verification suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional

from ..detectors import find_even_hole
from ..graph import Graph, is_connected
from .canonical import canonical_form

ALL_LABELED = "all-labeled"
CANONICAL = "canonical"
RANDOM = "random"

LABELED_BOUND = 7
CANONICAL_BOUND = 9


class EnumerationError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationSpec:
    """Which graphs a suite runs over.

    ``mode`` is one of ``all-labeled``, ``canonical`` or ``random``;
    ``count`` and ``seed`` only matter for ``random``, where each graph
    is drawn with every edge present independently with probability 1/2.
    """

    n: int
    mode: str = CANONICAL
    count: int = 0
    seed: int = 0
    filter: Optional[str] = None
    min_n: Optional[int] = None  # when set, sweep min_n..n instead of n alone

    def sizes(self) -> range:
        return range(self.n if self.min_n is None else self.min_n, self.n + 1)

    def to_json(self) -> dict:
        return {"n": self.n, "mode": self.mode, "count": self.count, "seed": self.seed,
                "filter": self.filter, "min_n": self.min_n}


FILTERS: dict[str, Callable[[Graph], bool]] = {
    "even-hole-free": lambda G: find_even_hole(G) is None,
    "connected": lambda G: is_connected(G),
}


def pair_list(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 order; bit i of an edge mask is pair i."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int, pairs: Optional[list[tuple[int, int]]] = None) -> Graph:
    pairs = pairs or pair_list(n)
    rows = [0] * n
    i = 0
    while mask:
        if mask & 1:
            u, v = pairs[i]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        mask >>= 1
        i += 1
    return Graph.trusted(n, rows)


def labeled_graphs(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[Graph]:
    if n > LABELED_BOUND:
        raise EnumerationError(f"labelled enumeration is limited to n <= {LABELED_BOUND}")
    pairs = pair_list(n)
    total = 1 << len(pairs)
    for mask in range(start, total if stop is None else min(stop, total)):
        yield graph_from_mask(n, mask, pairs)


@lru_cache(maxsize=None)
def canonical_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class, sorted by canonical rows.

    Built by canonical augmentation: every representative on n-1 vertices
    is extended by one new vertex in every possible way, and the results
    are deduplicated by canonical form.
    """
    if n > CANONICAL_BOUND:
        raise EnumerationError(f"canonical enumeration is limited to n <= {CANONICAL_BOUND}")
    if n == 0:
        return (Graph.empty(0),)
    found: set[tuple[int, ...]] = set()
    for H in canonical_graphs(n - 1):
        for nb in range(1 << (n - 1)):
            rows = [r | ((nb >> v & 1) << (n - 1)) for v, r in enumerate(H.rows)]
            rows.append(nb)
            found.add(canonical_form(Graph.trusted(n, rows)).rows)
    return tuple(Graph.trusted(n, rows) for rows in sorted(found))


def random_graphs(n: int, count: int, seed: int) -> Iterator[Graph]:
    rng = random.Random(f"{seed}:{n}")
    pairs = pair_list(n)
    for _ in range(count):
        yield graph_from_mask(n, rng.getrandbits(len(pairs)) if pairs else 0, pairs)


def enumerate_graphs(spec: EnumerationSpec) -> Iterator[Graph]:
    keep = FILTERS.get(spec.filter) if spec.filter else None
    if spec.filter and keep is None:
        raise EnumerationError(f"unknown filter {spec.filter!r}")
    for n in spec.sizes():
        if spec.mode == ALL_LABELED:
            stream: Iterator[Graph] = labeled_graphs(n)
        elif spec.mode == CANONICAL:
            stream = iter(canonical_graphs(n))
        elif spec.mode == RANDOM:
            stream = random_graphs(n, spec.count, spec.seed)
        else:
            raise EnumerationError(f"unknown mode {spec.mode!r}")
        for G in stream:
            if keep is None or keep(G):
                yield G


def sample_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))
