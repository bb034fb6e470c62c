"""Tight edges, clusters, folding, compressions and the red-graph functionals."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .graph import (
    Graph,
    _bits,
    complement_on_subset,
    count_cliques,
    d2,
    max_degree,
)

# rule ids carried by exclusion verdicts
HALF = "half"
MATCHING = "matching"
D2B = "max-degree-2"
S2 = "s=2"
E3 = "e=3"
E4 = "e=4"


class FoldRefused(ValueError):
    """Folding was asked for a cluster with fewer blue than red edges."""


def _check_cap(g: Graph, r: int) -> None:
    if max_degree(g) > r:
        raise ValueError(f"maximum degree {max_degree(g)} exceeds cap r={r}")


def tight_edges(g: Graph, r: int) -> list[tuple[int, int]]:
    """Edges whose endpoints have exactly ``r - 1`` common neighbours."""
    _check_cap(g, r)
    return [(u, v) for u, v in g.edges() if (g.adj[u] & g.adj[v]).bit_count() == r - 1]


@dataclass(frozen=True)
class Cluster:
    """A maximal tight clique ``T`` with its common neighbourhood ``S``.

    ``red`` is the complement of ``G[S]`` with vertex ``i`` standing for
    ``S[i]``. ``blue`` lists edges ``(u, v)`` with ``u`` in ``S`` and ``v``
    outside ``T | S``.
    """

    T: tuple[int, ...]
    S: tuple[int, ...]
    red: Graph
    blue: tuple[tuple[int, int], ...]

    @property
    def t(self) -> int:
        return len(self.T)

    @property
    def s(self) -> int:
        return len(self.S)

    @property
    def red_edges(self) -> int:
        return self.red.num_edges

    @property
    def blue_edges(self) -> int:
        return len(self.blue)


def cluster_at(g: Graph, T: Sequence[int]) -> Cluster:
    T = tuple(sorted(T))
    closed = g.adj[T[0]] | 1 << T[0]
    tmask = sum(1 << v for v in T)
    S = tuple(_bits(closed & ~tmask))
    inside = closed
    blue = []
    for u in S:
        for v in _bits(g.adj[u] & ~inside):
            blue.append((u, v))
    return Cluster(T, S, complement_on_subset(g, S), tuple(blue))


def clusters(g: Graph, r: int) -> list[Cluster]:
    """All clusters, including singletons for degree-``r`` vertices with no tight edge.

    Two degree-``r`` vertices share a tight edge exactly when their closed
    neighbourhoods coincide, so clusters are the classes of degree-``r``
    vertices under equal closed neighbourhood.
    """
    _check_cap(g, r)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        if g.adj[v].bit_count() == r:
            groups.setdefault(g.adj[v] | 1 << v, []).append(v)
    return [cluster_at(g, members) for members in sorted(groups.values())]


def fold(g: Graph, cl: Cluster) -> Graph:
    """Complete ``T | S`` to a clique and delete every blue edge."""
    if cl.blue_edges < cl.red_edges:
        raise FoldRefused(
            f"folding needs e(B) >= e(R); cluster T={cl.T} has "
            f"e(B)={cl.blue_edges} < e(R)={cl.red_edges}"
        )
    missing = [(cl.S[i], cl.S[j]) for i, j in cl.red.edges()]
    return g.add_edges(missing).remove_edges(cl.blue)


def Q(R: Graph, r: int) -> int:
    """``(r+1-s) e(R) + k_3(R) - sum_v C(d_R(v), 2)`` with ``s = |V(R)|``."""
    s = R.n
    return (r + 1 - s) * R.num_edges + count_cliques(R, 3) - sum(comb(d, 2) for d in R.degrees())


def blue_triangle_bound(R: Graph, s: int | None = None) -> int:
    """Upper bound on triangles with two blue edges at red graph ``R``."""
    s = R.n if s is None else s
    if s != R.n:
        raise ValueError("s must equal the number of red-graph vertices")
    degs = R.degrees()
    twice = sum(d * (d - 1) for d in degs) + sum(d * (s - 1 - d) for d in degs)
    return twice // 2


def blue_triangles(g: Graph, cl: Cluster) -> int:
    """Count triangles of ``g`` that contain two blue edges of ``cl``."""
    blue = {frozenset(e) for e in cl.blue}
    count = 0
    for u, v in cl.blue:
        # u in S, v outside; the third vertex w closes a blue pair either at u
        # (w outside, uw blue) or at v (w in S, wv blue)
        for w in _bits(g.adj[u] & g.adj[v]):
            if frozenset((u, w)) in blue or frozenset((v, w)) in blue:
                count += 1
    # each such triangle is seen once from each of its two blue edges
    return count // 2


# --- bipartite systems --------------------------------------------------------

@dataclass(frozen=True)
class BipartiteSystem:
    """Graph ``H`` on side ``X = V(H)`` and bipartite edges to side ``Y``.

    ``ynbrs[j]`` is the bitmask of ``X``-neighbours of ``Y``-vertex ``j``.
    """

    H: Graph
    ynbrs: tuple[int, ...]

    def __post_init__(self) -> None:
        full = (1 << self.H.n) - 1
        if any(mask & ~full for mask in self.ynbrs):
            raise ValueError("Y-neighbourhood outside V(H)")

    @classmethod
    def from_edges(cls, H: Graph, ysize: int, edges: Sequence[tuple[int, int]]) -> BipartiteSystem:
        """``edges`` are ``(x, j)`` pairs with ``x`` in ``V(H)`` and ``j`` in ``range(ysize)``."""
        masks = [0] * ysize
        for x, j in edges:
            masks[j] |= 1 << x
        return cls(H, tuple(masks))

    def edges(self) -> list[tuple[int, int]]:
        return sorted((x, j) for j, mask in enumerate(self.ynbrs) for x in _bits(mask))

    def x_degrees(self) -> list[int]:
        return [sum(mask >> x & 1 for mask in self.ynbrs) for x in range(self.H.n)]

    def as_graph(self) -> Graph:
        """The bipartite graph alone, ``X`` first then ``Y``."""
        nx = self.H.n
        edges = [(x, nx + j) for x, j in self.edges()]
        return Graph.from_edges(nx + len(self.ynbrs), edges)


def compress(B: BipartiteSystem, x: int, y: int) -> BipartiteSystem:
    """Move ``N(x) - N(y)`` from ``x`` to ``y``."""
    ny = len(B.ynbrs)
    if not (0 <= x < ny and 0 <= y < ny):
        raise ValueError("compression endpoints must lie in Y")
    if x == y:
        raise ValueError("compression needs two distinct Y-vertices")
    masks = list(B.ynbrs)
    moving = masks[x] & ~masks[y]
    masks[x] &= ~moving
    masks[y] |= moving
    return BipartiteSystem(B.H, tuple(masks))


def psi(B: BipartiteSystem) -> int:
    total = sum(comb(d, 2) for d in B.x_degrees())
    adj = B.H.adj
    for mask in B.ynbrs:
        for i in _bits(mask):
            # pairs i<j both adjacent to this Y-vertex and non-adjacent in H
            above = mask >> (i + 1) << (i + 1)
            total += (above & ~adj[i]).bit_count()
    return total


def bipartite_d2(B: BipartiteSystem) -> int:
    return d2(B.as_graph())


# --- exclusion verdicts -------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    citations: tuple[str, ...]

    @property
    def excluded(self) -> bool:
        return bool(self.citations)

    def __str__(self) -> str:
        return ", ".join(self.citations) if self.citations else "none"


def excluded_red_predicate(cl: Cluster, r: int) -> Verdict:
    """Which excluded-configuration results apply to this cluster.

    Meaningful for clusters of connected graphs with at least ``C(r+1, 2)``
    edges; a cluster spanning a whole ``K_{r+1}`` has no red edges and is
    never excluded.
    """
    R = cl.red
    e = R.num_edges
    if e == 0:
        return Verdict(())
    cites = []
    if 2 * cl.s <= r + 2:
        cites.append(HALF)
    dmax = max_degree(R)
    if dmax <= 1:
        cites.append(MATCHING)
    if dmax <= 2 and cl.t >= 2:
        cites.append(D2B)
    if r >= 3 and e in (1, 2):
        cites.append(S2)
    if r >= 7 and e == 3:
        cites.append(E3)
    if r >= 8 and e == 4:
        cites.append(E4)
    return Verdict(tuple(cites))
