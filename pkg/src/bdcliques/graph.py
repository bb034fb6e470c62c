"""Immutable simple graphs stored as per-vertex neighbour bitsets."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

# Sanity cap on vertex count. Bitsets are Python ints so this is not a word
# size, but it keeps accidental huge constructions from running away.
MAX_VERTICES = int(os.environ.get("BDCLIQUES_MAX_VERTICES", "1024"))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is an integer whose bit ``u`` is set iff ``uv`` is an edge.
    Instances are never mutated; every edit returns a new graph.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or self.n > MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency at {u},{v}")

    # construction ---------------------------------------------------------

    @classmethod
    def _unchecked(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # hot-path constructor for rows already known to be well formed
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int = 0) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    # basic queries --------------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v, row in enumerate(self.adj):
            for u in _bits(row >> (v + 1)):
                out.append((v, v + 1 + u))
        return out

    # edits ----------------------------------------------------------------

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled ``vertices[i] -> i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def without_isolated(self) -> Graph:
        return self.induced([v for v in range(self.n) if self.adj[v]])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in _bits(row):
                new |= 1 << perm[u]
            rows[perm[v]] = new
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def count_cliques(g: Graph, t: int) -> int:
    """Number of vertex sets of size ``t`` that induce a complete graph."""
    if t < 1:
        raise ValueError("clique size must be at least 1")
    if t == 1:
        return g.n
    if t == 2:
        return g.num_edges
    if t > g.n:
        return 0
    adj = g.adj

    def extend(cand: int, depth: int) -> int:
        # cand holds common neighbours above the current maximum vertex
        if depth == 1:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            nxt = cand & adj[v]
            if nxt.bit_count() >= depth - 1:
                total += extend(nxt, depth - 1)
        return total

    total = 0
    for v in range(g.n):
        higher = adj[v] >> (v + 1) << (v + 1)
        if higher.bit_count() >= t - 1:
            total += extend(higher, t - 1)
    return total


def pair_weight(g: Graph, x: int, y: int) -> int:
    """``|N(x) & N(y)|``; for an edge, the number of triangles through it."""
    if x == y:
        raise ValueError("pair weight needs two distinct vertices")
    return (g.adj[x] & g.adj[y]).bit_count()


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(offset, tuple(rows))


def complement_on_subset(g: Graph, s: Sequence[int]) -> Graph:
    """Complement of ``g[s]``, on ``len(s)`` vertices ordered as ``s``."""
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    if len(set(s)) != len(s):
        raise ValueError("subset has repeated vertices")
    sub = g.induced(list(s))
    full = (1 << sub.n) - 1
    return Graph(sub.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(sub.adj)))


def max_degree(g: Graph) -> int:
    return max((row.bit_count() for row in g.adj), default=0)


def min_degree(g: Graph) -> int:
    return min((row.bit_count() for row in g.adj), default=0)


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(frozenset(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def d2(g: Graph) -> int:
    """Sum of squared degrees."""
    return sum(row.bit_count() ** 2 for row in g.adj)


def clique_number(g: Graph) -> int:
    size = 1 if g.n else 0
    while count_cliques(g, size + 1):
        size += 1
    return size


def triangles_through_edges(g: Graph) -> int:
    """Sum of pair weights over edges; equals three times the triangle count."""
    return sum(pair_weight(g, u, v) for u, v in g.edges())
