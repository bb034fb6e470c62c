"""graph6 encoding and decoding.

Follows the published format: a size prefix N(n) then the upper triangle
of the adjacency matrix, column by column (``(0,1),(0,2),(1,2),(0,3),...``),
packed six bits per byte with 63 added to every byte.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, NamedTuple

from .graph import Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_size(n: int) -> list[int]:
    if n < 0:
        raise Graph6Error("negative vertex count")
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126] + [(n >> s & 63) + 63 for s in (12, 6, 0)]
    if n <= 68719476735:
        return [126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    raise Graph6Error("graph too large for graph6")


def encode(g: Graph, header: bool = False) -> str:
    data = _encode_size(g.n)
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                data.append(acc + 63)
                acc = nbits = 0
    if nbits:
        data.append((acc << (6 - nbits)) + 63)
    text = bytes(data).decode("ascii")
    return HEADER + text if header else text


def decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    raw = s.encode("ascii", errors="replace")
    if any(b < 63 or b > 126 for b in raw):
        raise Graph6Error("byte outside the graph6 range 63..126")
    vals = [b - 63 for b in raw]
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        body = vals[8:]
    else:
        raise Graph6Error("truncated size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    pad = need * 6 - k
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(rows))


class Diagnostic(NamedTuple):
    line: int
    message: str


def parse_lines(lines: Iterable[str]) -> tuple[list[Graph], list[Diagnostic]]:
    """Parse graph6 records one per line; bad lines become diagnostics."""
    graphs: list[Graph] = []
    problems: list[Diagnostic] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(decode(line))
        except (Graph6Error, ValueError) as exc:
            problems.append(Diagnostic(lineno, str(exc)))
    return graphs, problems


def read_file(path: str | Path) -> tuple[list[Graph], list[Diagnostic]]:
    with open(path, encoding="ascii", errors="replace") as fh:
        return parse_lines(fh)
