"""Isomorph-free exhaustive search over graphs with ``m`` edges and ``Delta <= r``.

Graphs are grown one edge at a time from the empty graph. A child ``G + e``
is kept only when deleting its canonical edge gives back a graph isomorphic
to the parent, so every isomorphism class (without isolated vertices) is
reached exactly once. Isolated vertices are never stored.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterator

from . import graph6
from .canon import CanonResult, canonical_form, orbits
from .colex import asymptotic_upper_bound, g_t, rainbow_segment_clique_count
from .graph import Graph, count_cliques, is_connected

DEFAULT_BUDGET = int(os.environ.get("BDCLIQUES_BUDGET", "2000000"))
CHECKPOINT_SCHEMA = "bdcliques.checkpoint/1"


@dataclass(frozen=True)
class SearchSpec:
    m: int
    r: int
    t: int = 3
    connected_only: bool = False
    clique_number_cap: int | None = None
    vertex_cap: int | None = None

    def __post_init__(self) -> None:
        if self.m < 0 or self.r < 1 or self.t < 2:
            raise ValueError("need m >= 0, r >= 1, t >= 2")
        if self.clique_number_cap is not None and self.clique_number_cap < 1:
            raise ValueError("clique number cap must be positive")

    @property
    def cap(self) -> int:
        # m edges without isolated vertices never need more than 2m vertices
        return 2 * self.m if self.vertex_cap is None else min(self.vertex_cap, 2 * self.m)

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class SearchResult:
    spec: SearchSpec
    f_value: int
    extremal_graphs: list[str]
    graphs_visited: int
    g_value: int

    @property
    def matches_conjecture(self) -> bool:
        return self.f_value == self.g_value


class BudgetExceeded(RuntimeError):
    """Raised when a search visits more classes than allowed.

    ``partial`` holds the merged result of the completed subtrees;
    ``completed`` their ids. With a checkpoint file the search can resume.
    """

    def __init__(self, partial: SearchResult, completed: list[int], total: int):
        super().__init__(
            f"budget exhausted after {partial.graphs_visited} classes "
            f"({len(completed)}/{total} subtrees complete)"
        )
        self.partial = partial
        self.completed = completed
        self.total = total


# --- generation ---------------------------------------------------------------

@dataclass(frozen=True)
class _Node:
    graph: Graph
    canon: CanonResult

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.graph.n, self.canon.certificate)


def _node(g: Graph) -> _Node:
    return _Node(g, canonical_form(g))


def _has_clique(adj: tuple[int, ...], cand: int, size: int) -> bool:
    if size <= 0:
        return True
    if cand.bit_count() < size:
        return False
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _has_clique(adj, cand & adj[v], size - 1):
            return True
    return False


def _canonical_edge(res: CanonResult) -> tuple[int, int]:
    # last edge in colex order of canonical positions
    cert = res.certificate
    for j in range(len(cert) - 1, 0, -1):
        low = cert[j] & ((1 << j) - 1)
        if low:
            i = low.bit_length() - 1
            a, b = res.lab[i], res.lab[j]
            return (a, b) if a < b else (b, a)
    raise ValueError("graph has no edges")


def _edge_in_orbit(e: tuple[int, int], target: tuple[int, int], gens) -> bool:
    goal = frozenset(target)
    seen = {frozenset(e)}
    frontier = [e]
    while frontier:
        u, v = frontier.pop()
        for g in gens:
            img = frozenset((g[u], g[v]))
            if img == goal:
                return True
            if img not in seen:
                seen.add(img)
                frontier.append((g[u], g[v]))
    return goal in seen


def _pair_orbit_reps(candidates: list[tuple[int, int]], gens) -> list[tuple[int, int]]:
    if not gens:
        return candidates
    reps = []
    covered: set[frozenset[int]] = set()
    for e in candidates:
        key = frozenset(e)
        if key in covered:
            continue
        reps.append(e)
        frontier = [e]
        covered.add(key)
        while frontier:
            u, v = frontier.pop()
            for g in gens:
                img = frozenset((g[u], g[v]))
                if img not in covered:
                    covered.add(img)
                    frontier.append((g[u], g[v]))
    return reps


def _children(node: _Node, r: int, vcap: int, omega: int | None) -> list[_Node]:
    g = node.graph
    n = g.n
    adj = g.adj
    degs = [row.bit_count() for row in adj]
    gens = node.canon.generators
    cands = [(u, v) for u in range(n) for v in range(u + 1, n)
             if not adj[u] >> v & 1 and degs[u] < r and degs[v] < r]
    cands = _pair_orbit_reps(cands, gens)
    if n + 1 <= vcap:
        rep = orbits(n, gens) if gens else list(range(n))
        cands += [(u, n) for u in range(n) if rep[u] == u and degs[u] < r]
    if n + 2 <= vcap:
        cands.append((n, n + 1))

    parent_key = node.key
    seen: set = set()
    out = []
    for u, v in cands:
        size = max(n, v + 1)
        rows = list(adj) + [0] * (size - n)
        if omega is not None and _has_clique(rows, rows[u] & rows[v], omega - 1):
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        child = Graph._unchecked(size, tuple(rows))
        res = canonical_form(child)
        key = (size, res.certificate)
        if key in seen:
            continue
        ce = _canonical_edge(res)
        if ce != (u, v) and not _edge_in_orbit((u, v), ce, res.generators):
            reduced = child.remove_edges([ce]).without_isolated()
            if (reduced.n, canonical_form(reduced).certificate) != parent_key:
                continue
        seen.add(key)
        out.append(_Node(child, res))
    return out


def _descend(node: _Node, level: int, depth: int, r: int, vcap: int,
             omega: int | None) -> Iterator[tuple[int, _Node]]:
    yield level, node
    if level == depth:
        return
    for child in _children(node, r, vcap, omega):
        yield from _descend(child, level + 1, depth, r, vcap, omega)


def iter_levels(r: int, m_max: int, vertex_cap: int | None = None,
                clique_number_cap: int | None = None) -> Iterator[tuple[int, Graph]]:
    """Every class with at most ``m_max`` edges, as ``(edge count, graph)``."""
    vcap = 2 * m_max if vertex_cap is None else vertex_cap
    root = _node(Graph.empty(0))
    for level, node in _descend(root, 0, m_max, r, vcap, clique_number_cap):
        yield level, node.graph


def _split_nodes(spec: SearchSpec, split_level: int) -> list[_Node]:
    root = _node(Graph.empty(0))
    return [node for level, node in _descend(root, 0, split_level, spec.r, spec.cap,
                                             spec.clique_number_cap)
            if level == split_level]


def _accept(spec: SearchSpec, g: Graph) -> bool:
    return not spec.connected_only or is_connected(g)


def enumerate_graphs(spec: SearchSpec, visitor: Callable[[Graph], None]) -> int:
    """Call ``visitor`` once per class in the search space; return the count."""
    count = 0
    root = _node(Graph.empty(0))
    for level, node in _descend(root, 0, spec.m, spec.r, spec.cap, spec.clique_number_cap):
        if level == spec.m and _accept(spec, node.graph):
            visitor(node.graph)
            count += 1
    return count


# --- f_t computation ------------------------------------------------------------

class _Exhausted(Exception):
    pass


@dataclass
class _Partial:
    best: int = -1
    extremal: list[str] = field(default_factory=list)
    visited: int = 0

    def merge(self, other: _Partial) -> None:
        self.visited += other.visited
        if other.best > self.best:
            self.best, self.extremal = other.best, list(other.extremal)
        elif other.best == self.best:
            self.extremal = sorted(set(self.extremal) | set(other.extremal))


def _run_subtree(args: tuple[SearchSpec, int, str, int | None]) -> _Partial:
    spec, split_level, g6, budget = args
    start = _node(graph6.decode(g6))
    part = _Partial()
    for level, node in _descend(start, split_level, spec.m, spec.r, spec.cap,
                                spec.clique_number_cap):
        if level != spec.m or not _accept(spec, node.graph):
            continue
        part.visited += 1
        if budget is not None and part.visited > budget:
            raise _Exhausted()
        k = count_cliques(node.graph, spec.t)
        canon = graph6.encode(Graph._unchecked(node.graph.n, node.canon.certificate))
        if k > part.best:
            part.best, part.extremal = k, [canon]
        elif k == part.best:
            part.extremal.append(canon)
    part.extremal.sort()
    return part


def _load_checkpoint(path: Path, digest: str) -> dict[int, _Partial]:
    done: dict[int, _Partial] = {}
    if not path.exists():
        return done
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("schema") != CHECKPOINT_SCHEMA or rec.get("spec") != digest:
                continue
            done[rec["subtree"]] = _Partial(rec["max"], rec["extremal"], rec["visited"])
    return done


def _append_checkpoint(path: Path, digest: str, sid: int, part: _Partial) -> None:
    rec = {"schema": CHECKPOINT_SCHEMA, "spec": digest, "subtree": sid,
           "max": part.best, "extremal": part.extremal, "visited": part.visited}
    with open(path, "a") as fh:
        fh.write(json.dumps(rec, sort_keys=True) + "\n")


def compute_f(spec: SearchSpec, budget: int | None = DEFAULT_BUDGET, workers: int = 1,
              checkpoint: str | Path | None = None, split_level: int = 3) -> SearchResult:
    """Exact ``max k_t`` over the search space together with all maximisers.

    The tree is cut at ``split_level`` edges; each subtree below is an
    independent task. Results merge by max so the outcome does not depend on
    scheduling. ``budget`` caps the number of visited ``m``-edge classes.
    """
    level = min(spec.m, split_level)
    tasks = [graph6.encode(node.graph) for node in _split_nodes(spec, level)]
    digest = spec.digest()
    ckpt = Path(checkpoint) if checkpoint else None
    done = _load_checkpoint(ckpt, digest) if ckpt else {}

    total = _Partial()
    for part in done.values():
        total.merge(part)
    pending = [i for i in range(len(tasks)) if i not in done]
    completed = sorted(done)

    def result() -> SearchResult:
        return SearchResult(spec, max(total.best, 0), sorted(total.extremal),
                            total.visited, g_t(spec.m, spec.r, spec.t))

    def remaining() -> int | None:
        return None if budget is None else budget - total.visited

    if workers > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [(i, pool.submit(_run_subtree, (spec, level, tasks[i], None)))
                       for i in pending]
            for i, fut in futures:
                part = fut.result()
                if budget is not None and total.visited + part.visited > budget:
                    raise BudgetExceeded(result(), completed, len(tasks))
                total.merge(part)
                completed.append(i)
                if ckpt:
                    _append_checkpoint(ckpt, digest, i, part)
    else:
        for i in pending:
            try:
                part = _run_subtree((spec, level, tasks[i], remaining()))
            except _Exhausted:
                raise BudgetExceeded(result(), completed, len(tasks)) from None
            total.merge(part)
            completed.append(i)
            if ckpt:
                _append_checkpoint(ckpt, digest, i, part)
    return result()


def f_table(r: int, m_max: int, ts: tuple[int, ...] = (3,),
            clique_number_cap: int | None = None) -> dict[int, dict[int, int]]:
    """``{m: {t: max k_t}}`` for every ``m <= m_max`` from a single sweep."""
    table = {m: {t: 0 for t in ts} for m in range(m_max + 1)}
    for level, g in iter_levels(r, m_max, clique_number_cap=clique_number_cap):
        row = table[level]
        for t in ts:
            k = count_cliques(g, t)
            if k > row[t]:
                row[t] = k
    return table


# --- verifications --------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    m: int
    r: int
    t: int
    f_value: int
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.f_value <= self.bound

    @property
    def tight(self) -> bool:
        return self.f_value == self.bound


def verify_asymptotic_bound(spec: SearchSpec, budget: int | None = DEFAULT_BUDGET) -> BoundCheck:
    bound = asymptotic_upper_bound(spec.m, spec.r, spec.t)
    res = compute_f(spec, budget=budget)
    return BoundCheck(spec.m, spec.r, spec.t, res.f_value, bound)


@dataclass(frozen=True)
class RainbowCheck:
    omega: int
    m: int
    t: int
    search_max: int
    rainbow_value: int
    witness: str

    @property
    def holds(self) -> bool:
        return self.search_max <= self.rainbow_value


def verify_rainbow_corollary(spec: SearchSpec) -> RainbowCheck:
    """Max ``k_t`` over graphs with clique number at most ``omega`` against ``R_omega(m)``."""
    omega = spec.clique_number_cap
    if omega is None:
        raise ValueError("rainbow check needs a clique_number_cap")
    best, witness = 0, ""
    found = False

    def visit(g: Graph) -> None:
        nonlocal best, witness, found
        k = count_cliques(g, spec.t)
        if not found or k > best:
            best, witness, found = k, graph6.encode(g), True

    enumerate_graphs(spec, visit)
    return RainbowCheck(omega, spec.m, spec.t, best, rainbow_segment_clique_count(omega, spec.m, spec.t),
                        witness)
