"""Strips and their rungs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from ..graph import Budget, Graph, GraphError, Path, VertexLike, all_induced_paths, as_mask, as_set, bits, mask_of


@dataclass(frozen=True)
class Strip:
    """Three vertex sets (A, B, C) with C disjoint from A and B."""

    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not self.A or not self.B:
            raise GraphError("a strip needs nonempty A and B")
        if self.C & (self.A | self.B):
            raise GraphError("C must be disjoint from A and B")

    @property
    def proper(self) -> bool:
        return not self.A & self.B

    @property
    def vertices(self) -> frozenset[int]:
        return self.A | self.B | self.C

    @property
    def masks(self) -> tuple[int, int, int]:
        return mask_of(self.A), mask_of(self.B), mask_of(self.C)

    def to_json(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "C": sorted(self.C)}


def is_rung(G: Graph, S: Strip, p: Path | Sequence[int]) -> bool:
    """An induced path p_1..p_k with p_1 in A, p_k in B and the interior in C.

    A single vertex is a rung exactly when it lies in A and B; for longer
    paths the first vertex must avoid B and the last must avoid A.
    """
    vs = tuple(p.verts if isinstance(p, Path) else p)
    if not vs:
        return False
    if len(vs) == 1:
        return vs[0] in S.A and vs[0] in S.B
    if vs[0] not in S.A or vs[0] in S.B or vs[-1] not in S.B or vs[-1] in S.A:
        return False
    if any(v not in S.C for v in vs[1:-1]):
        return False
    return Path(vs).is_induced(G)


def rung_cover(G: Graph, A: int, B: int, C: int, budget: Budget | None = None) -> int:
    """Mask of the vertices of A|B|C that lie on some rung."""
    want = A | B | C
    covered = A & B
    rows = G.rows
    for u in bits(A & ~B):
        for v in bits(B & ~A):
            if covered == want:
                return covered
            for path in all_induced_paths(rows, u, v, C, budget):
                covered |= mask_of(path)
    return covered


@dataclass(frozen=True)
class StripVerdict:
    ok: bool
    uncovered: frozenset[int] = frozenset()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_strip(G: Graph, A: VertexLike, B: VertexLike, C: VertexLike = (),
                   require_proper: bool = False, budget: Budget | None = None) -> StripVerdict:
    """Check that every vertex of A, B and C lies on a rung.

    Raises :class:`GraphError` if A or B is empty or C meets A or B.
    """
    a, b, c = as_mask(G, A), as_mask(G, B), as_mask(G, C)
    if not a or not b:
        raise GraphError("a strip needs nonempty A and B")
    if c & (a | b):
        raise GraphError("C must be disjoint from A and B")
    if require_proper and a & b:
        return StripVerdict(False, as_set(a & b), "A and B meet")
    missing = (a | b | c) & ~rung_cover(G, a, b, c, budget)
    if missing:
        return StripVerdict(False, as_set(missing), "vertices on no rung")
    return StripVerdict(True)


def strip_ok(G: Graph, A: int, B: int, C: int, proper: bool = False) -> bool:
    """Mask-level strip test used inside searches."""
    if not A or not B or C & (A | B) or (proper and A & B):
        return False
    return rung_cover(G, A, B, C) == A | B | C


@dataclass(frozen=True)
class BulletVerdict:
    """Result of checking a list of definitional bullets in order.

    ``bullet`` is the 1-based index of the first failing bullet (0 for
    shape problems found before any bullet applies).
    """

    ok: bool
    bullet: Optional[int] = None
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        from ..results import _plain

        return {"ok": self.ok, "bullet": self.bullet, "reason": self.reason, "witness": _plain(self.witness)}


OK = BulletVerdict(True)
