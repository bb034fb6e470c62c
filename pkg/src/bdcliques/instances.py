"""Seeded random instances for the cluster and compression property checks.

Plain random graphs almost never contain a cluster, so planted instances
start from ``K_{r+1}`` minus a red graph and attach blue edges and an
outside graph while keeping the maximum degree at most ``r``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .clusters import BipartiteSystem, Cluster, cluster_at
from .graph import Graph


@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    r: int
    cluster: Cluster


def random_red_graph(rng: random.Random, s: int) -> list[tuple[int, int]]:
    """Random edge set on ``range(s)`` with no isolated vertex (``s >= 2``)."""
    pairs = list(combinations(range(s), 2))
    p = rng.uniform(0.15, 0.7)
    edges = {e for e in pairs if rng.random() < p}
    covered = {v for e in edges for v in e}
    for v in range(s):
        if v not in covered:
            u = rng.choice([w for w in range(s) if w != v])
            edges.add((min(u, v), max(u, v)))
            covered.update((u, v))
    return sorted(edges)


def planted_instance(rng: random.Random, r: int, s: int | None = None) -> PlantedInstance:
    """Graph with maximum degree at most ``r`` containing a planted cluster.

    Vertices ``0..t-1`` form ``T``, ``t..r`` form ``S``, the rest lie outside.
    """
    if r < 2:
        raise ValueError("planted clusters need r >= 2")
    if s is None:
        s = rng.randint(2, r)
    t = r + 1 - s
    T = list(range(t))
    S = list(range(t, r + 1))
    red = random_red_graph(rng, s)
    red_set = {(S[i], S[j]) for i, j in red}
    edges = set(combinations(T, 2))
    edges.update((u, v) for u in T for v in S)
    edges.update(p for p in combinations(S, 2) if p not in red_set)

    red_deg = {v: 0 for v in S}
    for u, v in red_set:
        red_deg[u] += 1
        red_deg[v] += 1

    n_out = rng.randint(1, s + 3)
    outside = list(range(r + 1, r + 1 + n_out))
    deg = {v: 0 for v in outside}

    # blue edges: vertex u in S can take at most d_R(u) of them
    dense = rng.random() < 0.7
    for u in S:
        want = red_deg[u] if dense else rng.randint(0, red_deg[u])
        choices = outside[:]
        rng.shuffle(choices)
        for v in choices[:want]:
            if deg[v] < r:
                edges.add((u, v))
                deg[v] += 1

    # outside edges, so blue triangles can close through Y
    p_out = rng.uniform(0.2, 0.9)
    for u, v in combinations(outside, 2):
        if deg[u] < r and deg[v] < r and rng.random() < p_out:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1

    g = Graph.from_edges(r + 1 + n_out, edges)
    return PlantedInstance(g, r, cluster_at(g, T))


def planted_instances(seed: int, count: int, r_range: tuple[int, int] = (3, 9),
                      require_foldable: bool = True) -> list[PlantedInstance]:
    """``count`` instances; with ``require_foldable`` only those with ``e(B) >= e(R)``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = planted_instance(rng, rng.randint(*r_range))
        if require_foldable and inst.cluster.blue_edges < inst.cluster.red_edges:
            continue
        out.append(inst)
    return out


def random_bipartite_system(rng: random.Random, hsize: int, ysize: int) -> BipartiteSystem:
    hedges = [e for e in combinations(range(hsize), 2) if rng.random() < 0.5]
    H = Graph.from_edges(hsize, hedges)
    p = rng.uniform(0.2, 0.8)
    edges = [(x, j) for x in range(hsize) for j in range(ysize) if rng.random() < p]
    return BipartiteSystem.from_edges(H, ysize, edges)


def incomparable_pairs(B: BipartiteSystem) -> list[tuple[int, int]]:
    out = []
    for x, y in combinations(range(len(B.ynbrs)), 2):
        nx, ny = B.ynbrs[x], B.ynbrs[y]
        if nx & ~ny and ny & ~nx:
            out.append((x, y))
    return out


def compression_cases(seed: int, count: int) -> list[tuple[BipartiteSystem, int, int]]:
    """Random systems with an ordered Y-pair whose neighbourhoods are incomparable."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        B = random_bipartite_system(rng, rng.randint(2, 8), rng.randint(2, 6))
        pairs = incomparable_pairs(B)
        if not pairs:
            continue
        x, y = rng.choice(pairs)
        if rng.random() < 0.5:
            x, y = y, x
        out.append((B, x, y))
    return out
