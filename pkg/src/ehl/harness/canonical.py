"""Canonical labelling by colour refinement with individualisation.

The search explores the usual individualisation-refinement tree and keeps
the lexicographically largest relabelled adjacency.  Within a target cell,
a vertex that is a twin of one already tried is skipped: swapping two twins
is an automorphism fixing everything individualised so far, so both
subtrees yield the same set of leaves.
"""

from __future__ import annotations

from ..graph import Graph, bits


def _refine(rows: tuple[int, ...], cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition (cells are masks)."""
    i = 0
    cells = list(cells)
    while i < len(cells):
        splitter = cells[i]
        changed = False
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            groups: dict[int, int] = {}
            for v in bits(cell):
                k = (rows[v] & splitter).bit_count()
                groups[k] = groups.get(k, 0) | 1 << v
            if len(groups) == 1:
                out.append(cell)
            else:
                changed = True
                out.extend(groups[k] for k in sorted(groups))
        if changed:
            cells = out
            i = 0
        else:
            i += 1
    return cells


def _code(rows: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    code = []
    for v in order:
        r = 0
        for u in bits(rows[v]):
            r |= 1 << pos[u]
        code.append(r)
    return tuple(code)


def canonical_order(G: Graph) -> list[int]:
    """Vertex order whose relabelled graph is the canonical form of G."""
    if G.n == 0:
        return []
    rows = G.rows
    best: list = [None, None]

    def search(cells: list[int]) -> None:
        cells = _refine(rows, cells)
        target = None
        for idx, cell in enumerate(cells):
            if cell & (cell - 1):
                if target is None or cell.bit_count() < cells[target].bit_count():
                    target = idx
        if target is None:
            order = [c.bit_length() - 1 for c in cells]
            code = _code(rows, order)
            if best[0] is None or code > best[0]:
                best[0] = code
                best[1] = order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in bits(cell):
            if any(_twins(rows, u, v) for u in tried):
                continue
            tried.append(v)
            split = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1:]
            search(split)

    search([G.full])
    return best[1]


def _twins(rows, u: int, v: int) -> bool:
    mask = ~(1 << u | 1 << v)
    return rows[u] & mask == rows[v] & mask


def canonical_form(G: Graph) -> Graph:
    return G.relabel(canonical_order(G))


def canonical_key(G: Graph) -> tuple[int, tuple[int, ...]]:
    return G.n, canonical_form(G).rows
