"""Graph ingestion and export: graph6 (bit-exact per the nauty format
description), plain edge-list text, and DOT for figures."""

from __future__ import annotations

import hashlib

from .graphs import Graph, GraphError

_HEADER = ">>graph6<<"


def graph_to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise GraphError("graph6 supports at most 258047 vertices here")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        body.append(x + 63)
    return "".join(chr(c) for c in head + body)


def graph_from_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    for off, c in enumerate(data):
        if not 0 <= c <= 63:
            raise GraphError(f"invalid graph6 byte at offset {off}")
    if data[0] == 63:  # 126: long form
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        if data[1] == 63:
            raise GraphError("graph6 inputs over 258047 vertices unsupported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = n * (n - 1) // 2
    if len(body) * 6 < need:
        raise GraphError(
            f"truncated graph6 body at byte offset {1 + len(body)}: "
            f"need {(need + 5) // 6} data bytes for n={n}")
    bits = []
    for x in body:
        for k in range(5, -1, -1):
            bits.append(x >> k & 1)
    if any(bits[need:]):
        raise GraphError("graph6 padding bits are not zero")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def read_graph6_file(path: str) -> list[Graph]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(graph_from_graph6(line))
            except GraphError as exc:
                raise GraphError(f"{path}:{lineno}: {exc}") from None
    return out


def graph_to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise GraphError("edge-list input has no content")
    lineno, first = rows[0]
    try:
        n, m = map(int, first.split())
    except ValueError:
        raise GraphError(f"line {lineno}: expected 'n m' header") from None
    if len(rows) - 1 != m:
        raise GraphError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for lineno, line in rows[1:]:
        try:
            u, v = map(int, line.split())
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'u v'") from None
        edges.append((u, v))
    return Graph(n, edges)


def read_graph_file(path: str, fmt: str = "auto") -> Graph:
    with open(path) as fh:
        text = fh.read()
    if fmt == "auto":
        fmt = "edgelist" if path.endswith((".el", ".txt", ".edgelist")) else "graph6"
    if fmt == "graph6":
        for line in text.splitlines():
            if line.strip():
                return graph_from_graph6(line)
        raise GraphError(f"{path}: no graph6 line found")
    if fmt == "edgelist":
        return graph_from_edgelist(text)
    raise GraphError(f"unknown graph format {fmt!r}")


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        label = f' [label="{g.labels[v]}"]' if g.labels else ""
        lines.append(f"  {v}{label};")
    for u, v in sorted(g.edges):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_hash(g: Graph) -> str:
    """Stable hash binding certificates to the exact labelled graph."""
    payload = graph_to_edgelist(g).encode()
    return hashlib.sha256(payload).hexdigest()[:16]
