"""Acceptance criteria, one test (or a few named parts) per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary. Running
this file directly prints the same lines without pytest.
"""

from __future__ import annotations

import time
from math import comb

import pytest

from bdcliques.colex import colex_graph, decompose, g_t
from bdcliques.graph import Graph, count_cliques, disjoint_union
from bdcliques.multiset import ceil_half, gap_for, mk_closed_form_r8, mk_values
from bdcliques.suites import (
    R8_TABLE,
    suite_b1b2,
    suite_compincr,
    suite_d2,
    suite_half,
    suite_kk,
    suite_main_desk,
    suite_qr,
    suite_r8_table,
    suite_rainbow,
    suite_s2,
)

SEED = 20240601
COUNT = 10_000


def _failures(rep) -> list[str]:
    return [f"{c.id}: {c.values}" for c in rep.failures]


@pytest.mark.criterion(1, "r=8 endgame table reproduced exactly (< 1 s)")
def test_criterion_1_r8_table():
    rep = suite_r8_table()
    rows = rep.group("row ")
    assert [int(c.id.split("=")[1]) for c in rows] == [row[0] for row in R8_TABLE]
    assert rep.runtime < 1.0
    assert not [c for c in rows if not c.passed], _failures(rep)


@pytest.mark.criterion(2, "g_t equals direct clique counts, m <= 300, r <= 9 (< 10 s)")
def test_criterion_2_formula_matches_construction():
    start = time.perf_counter()
    bad = []
    for r in range(1, 10):
        block = Graph.complete(r + 1)
        for m in range(0, 301):
            dec = decompose(m, r)
            g = disjoint_union(*([block] * dec.a), colex_graph(dec.b))
            assert g.num_edges == m
            for t in range(2, r + 2):
                if count_cliques(g, t) != g_t(m, r, t):
                    bad.append((m, r, t))
    assert not bad
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(3, "f_3 = g_3 by exhaustive search, r <= 8 with m <= 9 and r <= 4 with m <= 10")
def test_criterion_3_f3_equals_g3_desk_scale():
    rep = suite_main_desk()
    grid = [c for c in rep.cases if c.id.startswith("m=")]
    assert len(grid) == 4 * 10 + 4 * 9
    assert rep.passed, _failures(rep)


@pytest.mark.criterion(4, "two colex graphs vs g_t, r <= 8, t in {3,4} (< 30 s)")
def test_criterion_4_b1b2():
    rep = suite_b1b2(8, (3, 4))
    assert rep.runtime < 30
    assert rep.passed, _failures(rep)[:10]


@pytest.fixture(scope="module")
def qr_report():
    return suite_qr(seed=SEED, count=COUNT)


@pytest.mark.criterion(5, "folding gain >= Q(R) on 10^4 planted clusters (< 1 min)")
def test_criterion_5_folding_gain(qr_report):
    assert sum(c.values.get("instances", 0) for c in qr_report.cases) == COUNT
    assert qr_report.runtime < 60
    assert qr_report.passed, _failures(qr_report)


@pytest.mark.criterion(6, "compression monotonicity on 10^4 bipartite systems (< 30 s)")
def test_criterion_6_compression():
    rep = suite_compincr(seed=SEED, count=COUNT)
    assert sum(c.values.get("systems", 0) for c in rep.cases) == COUNT
    assert rep.runtime < 30
    assert rep.passed, _failures(rep)


@pytest.mark.criterion(7, "Q(R) classification over all R with s <= 8 (< 2 min)")
def test_criterion_7_q_classification():
    half = suite_half(s_max=8)
    d2 = suite_d2(s_max=8, t_max=4)
    # 12345 graphs without isolated vertices on 2..8 vertices
    assert sum(c.values["graphs"] for c in half.cases if c.id.startswith("s=")) == 12345
    assert sum(c.values["zeros"] for c in d2.cases) > 0
    assert half.runtime + d2.runtime < 120
    assert half.passed and d2.passed, _failures(half) + _failures(d2)


@pytest.mark.criterion(8, "blue-edge cap and blue-triangle bound on the criterion 5 instances")
def test_criterion_8_blue_edges():
    rep = suite_s2(seed=SEED, count=COUNT)
    assert sum(c.values["instances"] for c in rep.cases) == COUNT
    assert rep.passed, _failures(rep)


@pytest.mark.criterion(9, "multiset bounds: r=8 closed form, sequence bound, strict gap (< 10 s)")
def test_criterion_9_r8_closed_form():
    start = time.perf_counter()
    dp = mk_values(200, 8, 5, require_r=True)
    bad = [(m, mk_closed_form_r8(m)[1], dp[m]) for m in range(46, 201) if mk_closed_form_r8(m)[1] != dp[m]]
    assert time.perf_counter() - start < 10
    assert not bad, f"{len(bad)} mismatches (m, closed form, DP): {bad[:6]}"


@pytest.mark.criterion(9, "multiset bounds: r=8 closed form, sequence bound, strict gap (< 10 s)")
def test_criterion_9_sequence_bounds():
    start = time.perf_counter()
    for r in range(1, 8):
        vals = mk_values(300, r, ceil_half(r))
        for m in range(comb(r + 1, 2) + 1, 301):
            assert vals[m] <= (r - 2) * m, (r, m)
        for m in range(comb(r + 1, 2), 301):
            assert (r - 2) * m < 3 * g_t(m, r, 3), (r, m)
        for m in range(0, 301):
            gap = gap_for(m, r)
            assert gap.total == 3 * g_t(m, r, 3) - (r - 2) * m, (r, m)
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(10, "colex graph maximises k_t without a cap (m <= 9); rainbow check (omega <= 4, m <= 8)")
def test_criterion_10_kruskal_katona():
    rep = suite_kk(m_max=9, ts=(3, 4, 5))
    assert rep.passed, _failures(rep)


@pytest.mark.criterion(10, "colex graph maximises k_t without a cap (m <= 9); rainbow check (omega <= 4, m <= 8)")
def test_criterion_10_rainbow():
    rep = suite_rainbow((2, 3, 4), 8)
    assert rep.passed, _failures(rep)


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
