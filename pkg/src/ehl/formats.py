"""Graph input and output: graph6, a plain edge list, and JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, GraphError


class FormatError(ValueError):
    """Malformed graph input."""


@dataclass(frozen=True)
class GraphDocument:
    format: str
    graph: Graph
    labels: Optional[tuple[str, ...]] = field(default=None)


def _g6_pairs(n: int):
    # graph6 lists the upper triangle column by column
    for j in range(1, n):
        for i in range(j):
            yield i, j


def to_graph6(G: Graph) -> str:
    n = G.n
    if n < 63:
        out = [chr(63 + n)]
    elif n < 258048:
        out = [chr(126)] + [chr(63 + (n >> s & 63)) for s in (12, 6, 0)]
    else:
        raise GraphError("graph too large for this encoder")
    bitstream = [1 if G.has_edge(i, j) else 0 for i, j in _g6_pairs(n)]
    while len(bitstream) % 6:
        bitstream.append(0)
    for k in range(0, len(bitstream), 6):
        v = 0
        for b in bitstream[k:k + 6]:
            v = v << 1 | b
        out.append(chr(63 + v))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise FormatError("graph6 character outside the printable range")
    if data[0] == 63:
        if len(data) < 4:
            raise FormatError("truncated graph6 size field")
        if data[1] == 63:
            raise FormatError("graph6 sizes beyond 258047 are not supported")
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    pairs = list(_g6_pairs(n))
    need = (len(pairs) + 5) // 6
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need}")
    edges = []
    for k, (i, j) in enumerate(pairs):
        if body[k // 6] >> (5 - k % 6) & 1:
            edges.append((i, j))
    return Graph.from_edges(n, edges)


def to_edgelist(G: Graph) -> str:
    edges = G.edges()
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("edge list is empty: expected an 'n m' header")
    head = lines[0].split()
    if len(head) != 2 or not all(h.lstrip("-").isdigit() for h in head):
        raise FormatError(f"malformed header {lines[0]!r}: expected 'n m'")
    n, m = int(head[0]), int(head[1])
    if n < 0 or m < 0:
        raise FormatError("header values must be nonnegative")
    if len(lines) - 1 != m:
        raise FormatError(f"header promises {m} edges but {len(lines) - 1} lines follow")
    seen = set()
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError(f"malformed edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex out of range in edge {u} {v} (n={n})")
        if u == v:
            raise FormatError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def to_json_doc(G: Graph, labels: Optional[tuple[str, ...]] = None) -> str:
    doc = {"n": G.n, "edges": [list(e) for e in G.edges()]}
    if labels is not None:
        doc["labels"] = list(labels)
    return json.dumps(doc, sort_keys=True)


def from_json_doc(text: str) -> tuple[Graph, Optional[tuple[str, ...]]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise FormatError("JSON graph needs 'n' and 'edges'")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("'n' must be a nonnegative integer")
    body = "\n".join([f"{n} {len(doc['edges'])}"] + [" ".join(str(x) for x in e) for e in doc["edges"]])
    G = from_edgelist(body)
    labels = doc.get("labels")
    if labels is not None:
        if len(labels) != n:
            raise FormatError("label count differs from n")
        labels = tuple(str(x) for x in labels)
    return G, labels


def parse_graph(data: str | bytes, fmt: str) -> GraphDocument:
    text = data.decode() if isinstance(data, bytes) else data
    try:
        if fmt == "graph6":
            return GraphDocument(fmt, from_graph6(text))
        if fmt == "edgelist":
            return GraphDocument(fmt, from_edgelist(text))
        if fmt == "json":
            G, labels = from_json_doc(text)
            return GraphDocument(fmt, G, labels)
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    raise FormatError(f"unknown format {fmt!r}")


def serialize(G: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(G)
    if fmt == "edgelist":
        return to_edgelist(G)
    if fmt == "json":
        return to_json_doc(G)
    raise FormatError(f"unknown format {fmt!r}")
