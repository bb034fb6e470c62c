"""Canonical labelling by partition refinement and individualisation.

The search tree is the usual one: refine the ordered partition to an
equitable one, individualise a vertex of the first smallest non-singleton
cell, recurse. Leaves are scored by their relabelled adjacency rows and the
largest wins. Automorphisms are recorded whenever two leaves coincide and
used in two ways: the search jumps back to where the two paths diverged,
and siblings in the same orbit of the pointwise path stabiliser are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, _bits

Cells = list[list[int]]


def _mask(cell: list[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(adj: tuple[int, ...], cells: Cells, active: list[int] | None = None) -> Cells:
    """Coarsest equitable refinement of ``cells``.

    Fragments of a split cell are ordered by their neighbour count into the
    splitter, so the result depends only on the graph structure and the
    input order of cells, never on vertex names.
    """
    cells = [c[:] for c in cells]
    queue = [_mask(cells[i]) for i in (range(len(cells)) if active is None else active)]
    head = 0
    while head < len(queue) and len(cells) < sum(len(c) for c in cells):
        wmask = queue[head]
        head += 1
        out: Cells = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((adj[v] & wmask).bit_count(), []).append(v)
            if len(buckets) == 1:
                out.append(cell)
                continue
            for key in sorted(buckets):
                frag = buckets[key]
                out.append(frag)
                queue.append(_mask(frag))
        cells = out
    return cells


def _certificate(adj: tuple[int, ...], lab: list[int]) -> tuple[int, ...]:
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        row = 0
        for u in _bits(adj[v]):
            row |= 1 << pos[u]
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True)
class CanonResult:
    """``lab[i]`` is the original vertex placed at canonical position ``i``."""

    certificate: tuple[int, ...]
    lab: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.lab)


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.adj
        self.first: tuple | None = None
        self.best: tuple | None = None
        self.gens: list[tuple[int, ...]] = []

    def run(self, cells: Cells) -> CanonResult:
        self._node(refine(self.adj, cells), [])
        cert, lab, _ = self.best
        return CanonResult(cert, tuple(lab), tuple(self.gens))

    def _node(self, cells: Cells, path: list[int]) -> int | None:
        if len(cells) == self.n:
            return self._leaf(cells, path)
        level = len(path)
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: len(cells[i]))
        target = cells[idx]
        tried: list[int] = []
        for w in sorted(target):
            if tried and self._same_orbit(w, tried, path):
                continue
            tried.append(w)
            child = cells[:idx] + [[w], [v for v in target if v != w]] + cells[idx + 1:]
            child = refine(self.adj, child, [idx])
            jump = self._node(child, path + [w])
            if jump is not None and jump < level:
                return jump
        return None

    def _leaf(self, cells: Cells, path: list[int]) -> int | None:
        lab = [c[0] for c in cells]
        cert = _certificate(self.adj, lab)
        if self.first is None:
            self.first = self.best = (cert, lab, path)
            return None
        for ref in (self.first, self.best):
            if cert == ref[0]:
                gamma = [0] * self.n
                for a, b in zip(ref[1], lab):
                    gamma[a] = b
                self.gens.append(tuple(gamma))
                common = 0
                for a, b in zip(ref[2], path):
                    if a != b:
                        break
                    common += 1
                return common
        if cert > self.best[0]:
            self.best = (cert, lab, path)
        return None

    def _same_orbit(self, w: int, tried: list[int], path: list[int]) -> bool:
        gens = [g for g in self.gens if all(g[p] == p for p in path)]
        if not gens:
            return False
        orbit = {w}
        frontier = [w]
        while frontier:
            v = frontier.pop()
            for g in gens:
                u = g[v]
                if u not in orbit:
                    orbit.add(u)
                    frontier.append(u)
        return any(t in orbit for t in tried)


def canonical_form(g: Graph, colors: list[int] | None = None) -> CanonResult:
    """Canonical labelling of ``g``; optional vertex colours are respected."""
    if g.n == 0:
        return CanonResult((), (), ())
    if colors is None:
        cells = [list(range(g.n))]
    else:
        by: dict[int, list[int]] = {}
        for v, col in enumerate(colors):
            by.setdefault(col, []).append(v)
        cells = [by[c] for c in sorted(by)]
    return _Search(g).run(cells)


def certificate(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Hashable isomorphism invariant that is complete: equal iff isomorphic."""
    return (g.n, canonical_form(g).certificate)


def canonical_graph(g: Graph) -> Graph:
    res = canonical_form(g)
    return Graph._unchecked(g.n, res.certificate)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


def orbits(n: int, generators: tuple[tuple[int, ...], ...]) -> list[int]:
    """Orbit representative (smallest element) for each vertex."""
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for gen in generators:
        for v, u in enumerate(gen):
            a, b = find(v), find(u)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]
