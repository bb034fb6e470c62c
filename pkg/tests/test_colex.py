from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdcliques.colex import (
    RAINBOW_GROUND_CAP,
    asymptotic_upper_bound,
    colex_clique_count,
    colex_graph,
    colex_less,
    colex_rank,
    colex_sets,
    colex_unrank,
    conjectured_extremal_graph,
    decompose,
    g_t,
    initial_segment,
    is_rainbow,
    normalize,
    rainbow_colex_graph,
    rainbow_pairs,
    rainbow_segment_clique_count,
    shadow_size,
    split_b,
)
from bdcliques.graph import Graph, count_cliques, disjoint_union, is_connected, max_degree


def _symdiff_cmp(a, b) -> int:
    """Colex by definition: A < B iff max(A ^ B) lies in B."""
    diff = set(a) ^ set(b)
    if not diff:
        return 0
    return -1 if max(diff) in b else 1


def colex_reference(ground: int, t: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(ground), t), key=cmp_to_key(_symdiff_cmp))


def test_order_matches_definition():
    for t in (1, 2, 3, 4):
        ref = colex_reference(9, t)
        gen = colex_sets(t)
        assert [next(gen) for _ in range(len(ref))] == ref
        assert [colex_rank(s) for s in ref] == list(range(len(ref)))
        for a, b in zip(ref, ref[1:]):
            assert colex_less(a, b) and not colex_less(b, a)


def test_rank_examples():
    assert colex_rank((1, 2)) == 2
    assert [colex_unrank(i, 2) for i in range(4)] == [(0, 1), (0, 2), (1, 2), (0, 3)]
    for t in range(1, 6):
        assert colex_unrank(0, t) == tuple(range(t))
    assert colex_rank(colex_unrank(10**6, 3)) == 10**6
    with pytest.raises(ValueError):
        colex_unrank(-1, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 6))
def test_rank_round_trip(rank, t):
    s = colex_unrank(rank, t)
    assert len(s) == t and list(s) == sorted(set(s))
    assert colex_rank(s) == rank


def _k_c_plus(c: int, d: int) -> Graph:
    """K_c plus one vertex joined to d of its vertices, built directly."""
    edges = list(combinations(range(c), 2)) + [(v, c) for v in range(d)]
    n = c + (1 if d else 0)
    return Graph.from_edges(n, edges)


def test_colex_graph_shape():
    for b in range(0, 80):
        c, d = split_b(b)
        assert colex_graph(b) == _k_c_plus(c, d).without_isolated()
        pairs = colex_reference(14, 2)[:b]
        assert sorted(colex_graph(b).edges()) == sorted(pairs)
    assert count_cliques(colex_graph(5), 3) == 2
    assert colex_graph(10) == Graph.complete(5)
    assert colex_graph(1).edges() == [(0, 1)] and split_b(1) == (2, 0)
    assert split_b(0) == (0, 0) and colex_graph(0).n == 0


def test_clique_formula_and_normalisation():
    for c in range(13):
        for d in range(c + 1):
            g = _k_c_plus(c, d)
            for t in range(2, 7):
                assert colex_clique_count(c, d, t) == count_cliques(g, t)
            assert normalize(c, d) == ((c + 1, 0) if d == c and c else (c, d))
    assert normalize(4, 4) == (5, 0)
    assert normalize(0, 0) == (0, 0)


def test_decompose_examples():
    dec = decompose(47, 8)
    assert (dec.a, dec.b, dec.c, dec.d) == (1, 11, 5, 1)
    dec = decompose(53, 8)
    assert (dec.a, dec.b, dec.c, dec.d) == (1, 17, 6, 2)
    for r in range(1, 10):
        dec = decompose(comb(r + 1, 2), r)
        assert (dec.a, dec.b) == (1, 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 400), st.integers(1, 10))
def test_decompose_invariants(m, r):
    dec = decompose(m, r)
    assert m == dec.a * comb(r + 1, 2) + dec.b and 0 <= dec.b < comb(r + 1, 2)
    if dec.b:
        assert dec.b == comb(dec.c, 2) + dec.d and 0 <= dec.d < dec.c <= r
    else:
        assert (dec.c, dec.d) == (0, 0)


def test_g_examples():
    assert g_t(47, 8, 3) == 94
    assert g_t(54, 8, 3) == 107
    for r in range(1, 9):
        for t in range(2, r + 2):
            assert g_t(comb(r + 1, 2), r, t) == comb(r + 1, t)


def test_g_monotone():
    for r in range(1, 10):
        for t in range(2, r + 2):
            vals = [g_t(m, r, t) for m in range(200)]
            assert all(x <= y for x, y in zip(vals, vals[1:]))


def test_conjectured_graph():
    g = conjectured_extremal_graph(47, 8)
    assert g.num_edges == 47 and max_degree(g) <= 8
    assert count_cliques(g, 3) == 94
    assert not is_connected(conjectured_extremal_graph(2 * 36 + 3, 8))
    assert disjoint_union(Graph.complete(9), colex_graph(11)).num_edges == g.num_edges


def test_asymptotic_bound():
    assert asymptotic_upper_bound(36, 8, 3) == 84
    assert asymptotic_upper_bound(47, 8, 3) == Fraction(329, 3)
    assert asymptotic_upper_bound(10, 4, 4) == 5
    with pytest.raises(ValueError):
        asymptotic_upper_bound(5, 4, 2)
    with pytest.raises(ValueError):
        asymptotic_upper_bound(5, 4, 6)


def test_rainbow():
    assert rainbow_colex_graph(2, 1).edges() == [(0, 1)]
    g = rainbow_colex_graph(3, 3)
    assert g == Graph.complete(3) and rainbow_segment_clique_count(3, 3, 3) == 1
    for omega in (2, 3, 4, 5):
        ref = [p for p in colex_reference(40, 2) if (p[1] - p[0]) % omega][:60]
        assert rainbow_pairs(omega, 60) == ref
        assert all(is_rainbow(p, omega) for p in ref)
        assert rainbow_segment_clique_count(omega, 60, omega + 1) == 0
    assert not is_rainbow((1, 4), 3) and is_rainbow((0, 1, 2), 3)
    with pytest.raises(ValueError):
        rainbow_pairs(1, 3)
    with pytest.raises(ValueError):
        rainbow_pairs(2, RAINBOW_GROUND_CAP ** 2)


def _shadow_reference(N: int, t: int, ell: int) -> int:
    ground = t
    while comb(ground, t) < N:
        ground += 1
    first = colex_reference(ground, t)[:N]
    return len({s for A in first for s in combinations(A, ell)})


def test_shadow():
    assert shadow_size(comb(7, 3), 3, 2) == comb(7, 2)
    for t in range(1, 5):
        for ell in range(1, t + 1):
            assert shadow_size(1, t, ell) == comb(t, ell)
    assert shadow_size(5, 3, 2) == _shadow_reference(5, 3, 2) == 8
    for N in range(0, 25):
        for t, ell in ((3, 2), (4, 2), (4, 3), (3, 1)):
            assert shadow_size(N, t, ell) == _shadow_reference(N, t, ell)
    assert initial_segment(3, 2) == [(0, 1), (0, 2), (1, 2)]


def test_kk_edge_shadow_consequence():
    # a colex graph has exactly the triangles whose pair-shadow it contains
    for m in range(0, 40):
        k = count_cliques(colex_graph(m), 3)
        assert shadow_size(k, 3, 2) <= m
