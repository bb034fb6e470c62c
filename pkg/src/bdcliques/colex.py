"""Colex order, colex graphs and the conjectured extremal value ``g_t(m, r)``.

Labels are 0-based: the first pairs in colex order are
``{0,1}, {0,2}, {1,2}, {0,3}, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .graph import Graph, count_cliques, disjoint_union

# Largest label used when listing rainbow pairs; m beyond what this ground
# set provides raises instead of looping forever.
RAINBOW_GROUND_CAP = 512


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is 0 for ``k < 0`` or ``n < k``."""
    if k < 0 or n < k:
        return 0
    return comb(n, k)


# --- rank / unrank ----------------------------------------------------------

def colex_rank(subset: Sequence[int]) -> int:
    elems = sorted(subset)
    if len(set(elems)) != len(elems):
        raise ValueError("set elements must be distinct")
    if elems and elems[0] < 0:
        raise ValueError("set elements must be non-negative")
    return sum(comb(x, i + 1) for i, x in enumerate(elems))


def colex_unrank(rank: int, t: int) -> tuple[int, ...]:
    """The ``t``-set of the given colex rank, as a sorted tuple."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    if t < 0:
        raise ValueError("set size must be non-negative")
    out = []
    for k in range(t, 0, -1):
        # largest x with comb(x, k) <= rank
        lo, hi = k - 1, k
        while comb(hi, k) <= rank:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if comb(mid, k) <= rank:
                lo = mid
            else:
                hi = mid
        out.append(lo)
        rank -= comb(lo, k)
    return tuple(reversed(out))


def colex_sets(t: int) -> Iterator[tuple[int, ...]]:
    """All ``t``-subsets of the naturals in colex order (infinite)."""
    if t == 0:
        yield ()
        return
    top = t - 1
    while True:
        # reversed tuples compare lexicographically exactly as colex
        for rest in sorted(combinations(range(top), t - 1), key=lambda s: s[::-1]):
            yield rest + (top,)
        top += 1


def colex_less(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` precedes ``b``: the largest element of ``a ^ b`` lies in ``b``."""
    diff = set(a) ^ set(b)
    return bool(diff) and max(diff) in set(b)


# --- colex graphs -------------------------------------------------------------

def colex_graph(b: int) -> Graph:
    """Graph on the first ``b`` pairs in colex order (no isolated vertices)."""
    if b < 0:
        raise ValueError("edge count must be non-negative")
    pairs = []
    gen = colex_sets(2)
    for _ in range(b):
        pairs.append(next(gen))
    n = pairs[-1][1] + 1 if pairs else 0
    return Graph.from_edges(n, pairs)


@dataclass(frozen=True)
class ColexDecomposition:
    """``m = a*C(r+1,2) + b`` with ``0 <= b < C(r+1,2)`` and ``b = C(c,2) + d``."""

    m: int
    r: int
    a: int
    b: int
    c: int
    d: int

    @property
    def block_edges(self) -> int:
        return comb(self.r + 1, 2)


def split_b(b: int) -> tuple[int, int]:
    """``(c, d)`` with ``b = C(c,2) + d`` and ``0 <= d < c``; ``(0, 0)`` for ``b = 0``."""
    if b < 0:
        raise ValueError("b must be non-negative")
    if b == 0:
        return 0, 0
    c = 2
    while comb(c + 1, 2) <= b:
        c += 1
    return c, b - comb(c, 2)


def normalize(c: int, d: int) -> tuple[int, int]:
    """Rewrite ``[c, c]`` as ``[c+1, 0]``; other pairs pass through."""
    if d == c and c > 0:
        return c + 1, 0
    return c, d


def decompose(m: int, r: int) -> ColexDecomposition:
    if m < 0:
        raise ValueError("m must be non-negative")
    if r < 1:
        raise ValueError("r must be at least 1")
    a, b = divmod(m, comb(r + 1, 2))
    c, d = split_b(b)
    return ColexDecomposition(m, r, a, b, c, d)


def colex_clique_count(c: int, d: int, t: int) -> int:
    """``k_t`` of ``K_c`` plus one vertex joined to ``d`` of its vertices."""
    return binom(c, t) + binom(d, t - 1)


def g_t(m: int, r: int, t: int) -> int:
    """Closed-form ``k_t(aK_{r+1} + C(b))``."""
    if t < 2:
        raise ValueError("t must be at least 2")
    dec = decompose(m, r)
    return dec.a * binom(r + 1, t) + colex_clique_count(dec.c, dec.d, t)


def conjectured_extremal_graph(m: int, r: int) -> Graph:
    dec = decompose(m, r)
    parts = [Graph.complete(r + 1)] * dec.a + [colex_graph(dec.b)]
    return disjoint_union(*parts)


def asymptotic_upper_bound(m: int, r: int, t: int) -> Fraction:
    """``m * C(r+1,t) / C(r+1,2)`` as an exact rational."""
    if not 3 <= t <= r + 1:
        raise ValueError(f"need 3 <= t <= r+1, got t={t}, r={r}")
    return Fraction(m * comb(r + 1, t), comb(r + 1, 2))


# --- rainbow colex ------------------------------------------------------------

def is_rainbow(subset: Sequence[int], omega: int) -> bool:
    residues = [x % omega for x in subset]
    return len(set(residues)) == len(residues)


def rainbow_pairs(omega: int, m: int) -> list[tuple[int, int]]:
    """First ``m`` ``omega``-rainbow pairs in colex order."""
    if omega < 2:
        raise ValueError("omega must be at least 2")
    if m < 0:
        raise ValueError("m must be non-negative")
    out: list[tuple[int, int]] = []
    for pair in colex_sets(2):
        if len(out) == m:
            break
        if pair[1] > RAINBOW_GROUND_CAP:
            raise ValueError(f"m={m} exceeds rainbow pairs below {RAINBOW_GROUND_CAP}")
        if is_rainbow(pair, omega):
            out.append(pair)
    return out


def rainbow_colex_graph(omega: int, m: int) -> Graph:
    pairs = rainbow_pairs(omega, m)
    n = max((p[1] for p in pairs), default=-1) + 1
    return Graph.from_edges(n, pairs)


def rainbow_segment_clique_count(omega: int, m: int, t: int) -> int:
    return count_cliques(rainbow_colex_graph(omega, m), t)


# --- shadows ------------------------------------------------------------------

def initial_segment(N: int, t: int) -> list[tuple[int, ...]]:
    gen = colex_sets(t)
    return [next(gen) for _ in range(N)]


def shadow(family: Sequence[Sequence[int]], ell: int) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    for s in family:
        out.update(combinations(sorted(s), ell))
    return out


def shadow_size(N: int, t: int, ell: int) -> int:
    """Size of the ``ell``-shadow of the first ``N`` ``t``-sets in colex order."""
    if not 1 <= ell <= t:
        raise ValueError("need 1 <= ell <= t")
    if N < 0:
        raise ValueError("N must be non-negative")
    return len(shadow(initial_segment(N, t), ell))
