"""Named verification suites.

Each suite returns a :class:`VerificationReport`. Randomised suites take an
explicit seed, so a rerun with the same parameters gives the same records.
Suites with thousands of instances summarise the passing ones per parameter
value and add one case per failing instance, which carries the graph6 or
integer data needed to reproduce it.
"""

from __future__ import annotations

import time
from collections import defaultdict
from math import comb
from typing import Callable

from . import clusters as cf
from . import graph6
from .colex import colex_graph, decompose, g_t, split_b
from .graph import Graph, count_cliques, pair_weight
from .instances import compression_cases, planted_instances
from .multiset import (
    InfeasibleError,
    ceil_half,
    direct_gap,
    gap_for,
    mk_closed_form_r8,
    mk_oracle,
    mk_values,
    seqopt_bound,
)
from .report import VerificationReport
from .search import SearchSpec, f_table, iter_levels, verify_rainbow_corollary

# (m, x, 3M*, 3g3) rows of the r = 8 endgame table under test
R8_TABLE = (
    (47, 3, 279, 282),
    (48, 5, 283, 285),
    (49, 7, 287, 291),
    (50, 2, 298, 300),
    (52, 6, 306, 312),
    (53, 1, 317, 315),
    (54, 3, 321, 321),
    (55, 5, 325, 330),
)


def _timed(fn: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    def run(*args, **kwargs) -> VerificationReport:
        start = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.runtime = time.perf_counter() - start
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _per_r_summary(rep: VerificationReport, stats: dict[int, dict[str, int]], fails: dict[int, int]) -> None:
    for r in sorted(stats):
        rep.add(f"r={r}", fails.get(r, 0) == 0, **stats[r], failures=fails.get(r, 0))


# --- cluster suites -------------------------------------------------------------

@_timed
def suite_qr(seed: int = 0, count: int = 10_000) -> VerificationReport:
    """Folding gains at least ``Q(R)`` triangles on planted clusters."""
    rep = VerificationReport("QR", {"seed": seed, "count": count}, ["fold-gain"])
    stats: dict[int, dict[str, int]] = defaultdict(lambda: {"instances": 0, "min_slack": 10**9})
    fails: dict[int, int] = defaultdict(int)
    for i, inst in enumerate(planted_instances(seed, count)):
        g, r, cl = inst.graph, inst.r, inst.cluster
        gain = count_cliques(cf.fold(g, cl), 3) - count_cliques(g, 3)
        q = cf.Q(cl.red, r)
        st = stats[r]
        st["instances"] += 1
        st["min_slack"] = min(st["min_slack"], gain - q)
        if gain < q:
            fails[r] += 1
            rep.add(f"instance={i}", False, graph6.encode(g), r=r, T=list(cl.T), gain=gain, Q=q)
    _per_r_summary(rep, stats, fails)
    return rep


@_timed
def suite_s2(seed: int = 0, count: int = 10_000) -> VerificationReport:
    """Blue-edge weights are at most ``s - 2`` and blue triangles obey the degree bound."""
    rep = VerificationReport("s-2", {"seed": seed, "count": count}, ["blue-weight", "blue-triangles"])
    stats: dict[int, dict[str, int]] = defaultdict(lambda: {"instances": 0, "blue_edges": 0})
    fails: dict[int, int] = defaultdict(int)
    for i, inst in enumerate(planted_instances(seed, count)):
        g, r, cl = inst.graph, inst.r, inst.cluster
        st = stats[r]
        st["instances"] += 1
        st["blue_edges"] += len(cl.blue)
        heavy = [(u, v, pair_weight(g, u, v)) for u, v in cl.blue if pair_weight(g, u, v) > cl.s - 2]
        tri = cf.blue_triangles(g, cl)
        bound = cf.blue_triangle_bound(cl.red, cl.s)
        if heavy or tri > bound:
            fails[r] += 1
            rep.add(f"instance={i}", False, graph6.encode(g), r=r, T=list(cl.T), s=cl.s,
                    heavy_blue=[list(h) for h in heavy], blue_triangles=tri, bound=bound)
    _per_r_summary(rep, stats, fails)
    return rep


@_timed
def suite_compincr(seed: int = 0, count: int = 10_000) -> VerificationReport:
    """Compressing one Y-vertex into another never lowers ``psi`` and raises ``d2``."""
    rep = VerificationReport("compincr", {"seed": seed, "count": count}, ["compression"])
    by_h: dict[int, dict[str, int]] = defaultdict(lambda: {"systems": 0})
    fails: dict[int, int] = defaultdict(int)
    for i, (B, x, y) in enumerate(compression_cases(seed, count)):
        C = cf.compress(B, x, y)
        p0, p1 = cf.psi(B), cf.psi(C)
        q0, q1 = cf.bipartite_d2(B), cf.bipartite_d2(C)
        h = B.H.n
        by_h[h]["systems"] += 1
        if p1 < p0 or q1 <= q0:
            fails[h] += 1
            rep.add(f"system={i}", False, graph6.encode(B.as_graph()), H=graph6.encode(B.H),
                    x=x, y=y, psi=[p0, p1], d2=[q0, q1])
    for h in sorted(by_h):
        rep.add(f"|H|={h}", fails.get(h, 0) == 0, **by_h[h], failures=fails.get(h, 0))
    return rep


def _red_graphs(s_max: int, r_cap: int) -> list[Graph]:
    """Every graph without isolated vertices on 2..s_max vertices, one per class."""
    return [g for m, g in iter_levels(r_cap, comb(s_max, 2), vertex_cap=s_max) if m > 0]


def _half_ranks(s: int) -> list[int]:
    lo = 2 * s - 2
    return sorted(set(range(lo, lo + 4)) | {r for r in (8, 9, 10) if r >= lo})


@_timed
def suite_half(s_max: int = 8) -> VerificationReport:
    """``Q(R) > 0`` for every ``R`` without isolated vertices when ``2s <= r + 2``."""
    rep = VerificationReport("half", {"s_max": s_max}, ["half"])
    stats: dict[int, dict[str, int]] = defaultdict(lambda: {"graphs": 0, "checks": 0, "min_Q": 10**9})
    fails: dict[int, int] = defaultdict(int)
    for R in _red_graphs(s_max, s_max - 1):
        s = R.n
        st = stats[s]
        st["graphs"] += 1
        for r in _half_ranks(s):
            q = cf.Q(R, r)
            st["checks"] += 1
            st["min_Q"] = min(st["min_Q"], q)
            if q <= 0:
                fails[s] += 1
                rep.add(f"s={s},r={r},R={graph6.encode(R)}", False, graph6.encode(R), r=r, Q=q)
    for s in sorted(stats):
        rep.add(f"s={s}", fails.get(s, 0) == 0, **stats[s], failures=fails.get(s, 0))
    return rep


def is_long_cycle_union(R: Graph) -> bool:
    """Disjoint union of cycles, each of length at least four."""
    return R.n > 0 and all(d == 2 for d in R.degrees()) and count_cliques(R, 3) == 0


@_timed
def suite_d2(s_max: int = 9, t_max: int = 4) -> VerificationReport:
    """For ``Delta(R) <= 2``: ``Q(R) >= 0`` with equality only for ``t = 1`` long-cycle unions."""
    rep = VerificationReport("D2", {"s_max": s_max, "t_max": t_max}, ["max-degree-2"])
    stats: dict[int, dict[str, int]] = defaultdict(lambda: {"graphs": 0, "zeros": 0})
    fails: dict[int, int] = defaultdict(int)
    for R in _red_graphs(s_max, 2):
        s = R.n
        cyc = is_long_cycle_union(R)
        stats[s]["graphs"] += 1
        for t in range(1, t_max + 1):
            q = cf.Q(R, s - 1 + t)
            zero_expected = t == 1 and cyc
            if q == 0:
                stats[s]["zeros"] += 1
            if q < 0 or (q == 0) != zero_expected:
                fails[s] += 1
                rep.add(f"s={s},t={t},R={graph6.encode(R)}", False, graph6.encode(R),
                        t=t, r=s - 1 + t, Q=q, long_cycles=cyc)
    for s in sorted(stats):
        rep.add(f"s={s}", fails.get(s, 0) == 0, **stats[s], failures=fails.get(s, 0))
    return rep


# --- colex suite ----------------------------------------------------------------

@_timed
def suite_b1b2(r_max: int = 8, ts: tuple[int, ...] = (3, 4)) -> VerificationReport:
    """Two colex graphs lose to the extremal graph on the combined edge count.

    Strict inequality, except equality when ``b1`` is triangular and ``b2 = 1``.
    """
    rep = VerificationReport("b1b2", {"r_max": r_max, "t": list(ts)}, ["two-colex"])
    top = comb(r_max + 1, 2)
    kt = {t: [count_cliques(colex_graph(b), t) for b in range(top)] for t in ts}
    for t in ts:
        for r in range(1, r_max + 1):
            pairs = bad = 0
            for b1 in range(1, comb(r + 1, 2)):
                c1, d1 = split_b(b1)
                for b2 in range(1, b1 + 1):
                    pairs += 1
                    lhs = kt[t][b1] + kt[t][b2]
                    rhs = g_t(b1 + b2, r, t)
                    special = d1 == 0 and b2 == 1
                    ok = lhs == rhs if special else lhs < rhs
                    if not ok:
                        bad += 1
                        rep.add(f"t={t},r={r},b1={b1},b2={b2}", False,
                                graph6.encode(colex_graph(b1)) + " " + graph6.encode(colex_graph(b2)),
                                lhs=lhs, rhs=rhs, special=special)
            rep.add(f"t={t},r={r}", bad == 0, pairs=pairs, failures=bad)
    return rep


# --- multiset suites ------------------------------------------------------------

@_timed
def suite_seqopt(m_max: int = 300, r_max: int = 7, r8_lo: int = 37, r8_hi: int = 200) -> VerificationReport:
    """Sequence bounds for ``r <= 7`` and the ``r = 8`` closed form against the DP."""
    rep = VerificationReport(
        "seqopt", {"m_max": m_max, "r_max": r_max, "r8_range": [r8_lo, r8_hi]},
        ["sequence-bound", "small-r", "degree-restriction", "r=8"])
    for r in range(1, r_max + 1):
        k = ceil_half(r)
        vals = mk_values(m_max, r, k)
        lo = comb(r + 1, 2) + 1
        over = [m for m in range(lo, m_max + 1) if vals[m] > seqopt_bound(m, r)]
        rep.add(f"seqoptsoln r={r}", not over, k=k, m_range=[lo, m_max], violations=over[:10])

        weak = [m for m in range(comb(r + 1, 2), m_max + 1) if (r - 2) * m >= 3 * g_t(m, r, 3)]
        rep.add(f"1to7 r={r}", not weak, m_range=[comb(r + 1, 2), m_max], violations=weak[:10])

        gap = [m for m in range(m_max + 1) if gap_for(m, r).total != direct_gap(m, r)]
        rep.add(f"gap r={r}", not gap, m_range=[0, m_max], violations=gap[:10])

        nod = []
        for m in range(lo, m_max + 1):
            try:
                restricted = mk_oracle(m, r, k, degrees=[d for d in (r - 1, r) if d >= 1]).value3
            except InfeasibleError:
                restricted = None
            if restricted != vals[m]:
                nod.append(m)
        rep.add(f"nod r={r}", not nod, m_range=[lo, m_max], violations=nod[:10])

    dp = mk_values(r8_hi, 8, 5, require_r=True)
    for m in range(r8_lo, r8_hi + 1):
        x, closed = mk_closed_form_r8(m)
        if closed != dp[m]:
            wit = mk_oracle(m, 8, 5, require_r=True).witness
            rep.add(f"r8 closed form m={m}", False, f"m={m} witness={wit}",
                    x=x, closed_form=closed, dp=dp[m], witness=str(wit))
    bad = sum(1 for c in rep.cases if c.id.startswith("r8 closed form") and not c.passed)
    rep.add("r8 closed form", bad == 0, m_range=[r8_lo, r8_hi], mismatches=bad)
    return rep


@_timed
def suite_r8_table() -> VerificationReport:
    """The eight ``r = 8`` endgame rows: ``x``, ``3M*`` from the DP, and ``3 g_3``."""
    rep = VerificationReport("r8-table", {"r": 8, "k": 5}, ["r=8", "endgame"])
    for m, x_tab, mstar_tab, g_tab in R8_TABLE:
        x, closed = mk_closed_form_r8(m)
        res = mk_oracle(m, 8, 5, require_r=True)
        g3 = 3 * g_t(m, 8, 3)
        ok = x == x_tab and res.value3 == mstar_tab and closed == res.value3 and g3 == g_tab
        rep.add(f"row m={m}", ok, None if ok else f"m={m} witness={res.witness}",
                x=x, mstar3=res.value3, closed_form=closed, g3=g3,
                tabulated=[x_tab, mstar_tab, g_tab], witness=str(res.witness))
    for m, *_ in R8_TABLE:
        value3 = mk_oracle(m, 8, 5, require_r=True).value3
        g = g_t(m, 8, 3)
        rep.add(f"endgame m={m}", value3 // 3 <= g, floor_mstar=value3 // 3, g3=g)
    return rep


# --- search suites --------------------------------------------------------------

DESK_GRID = {r: (9 if r > 4 else 10) for r in range(1, 9)}


@_timed
def suite_main_desk(grid: dict[int, int] | None = None) -> VerificationReport:
    """Exhaustive ``f_3 = g_3`` on the desk-scale grid, plus monotonicity and superadditivity."""
    grid = DESK_GRID if grid is None else grid
    rep = VerificationReport("main-desk", {"grid": {str(r): m for r, m in sorted(grid.items())}},
                             ["main", "Delta=r"])
    tables = {r: f_table(r, m_max) for r, m_max in sorted(grid.items())}
    for r, table in tables.items():
        for m in range(1, grid[r] + 1):
            f, g = table[m][3], g_t(m, r, 3)
            dec = decompose(m, r)
            rep.add(f"m={m},r={r}", f == g, None if f == g else f"m={m} r={r}",
                    f3=f, g3=g, a=dec.a, b=dec.b)
        f = [table[m][3] for m in range(grid[r] + 1)]
        mono = all(f[m + 1] >= f[m] for m in range(grid[r]))
        if r - 1 in tables:
            mono = mono and all(f[m] >= tables[r - 1][m][3] for m in range(grid[r - 1] + 1) if m <= grid[r])
        rep.add(f"monotone r={r}", mono, f3=f)
        sup = [(a, b) for a in range(1, grid[r] + 1) for b in range(a, grid[r] + 1 - a)
               if f[a + b] < f[a] + f[b]]
        rep.add(f"superadditive r={r}", not sup, violations=[list(p) for p in sup])
    return rep


@_timed
def suite_kk(m_max: int = 9, ts: tuple[int, ...] = (3, 4, 5)) -> VerificationReport:
    """Without a degree cap the colex graph maximises ``k_t`` among ``m``-edge graphs."""
    rep = VerificationReport("kk", {"m_max": m_max, "t": list(ts)}, ["KK"])
    table = f_table(max(m_max, 1), m_max, ts)
    for m in range(1, m_max + 1):
        for t in ts:
            f, c = table[m][t], count_cliques(colex_graph(m), t)
            rep.add(f"m={m},t={t}", f == c, None if f == c else f"m={m} t={t}",
                    search_max=f, colex=c)
    return rep


@_timed
def suite_rainbow(omegas: tuple[int, ...] = (2, 3, 4), m_max: int = 8) -> VerificationReport:
    """Clique-number-bounded search against the rainbow colex segment."""
    rep = VerificationReport("rainbow", {"omega": list(omegas), "m_max": m_max}, ["rainbow"])
    for omega in omegas:
        for m in range(1, m_max + 1):
            for t in range(2, max(omega, 3) + 1):
                chk = verify_rainbow_corollary(SearchSpec(m, m, t, clique_number_cap=omega))
                rep.add(f"omega={omega},m={m},t={t}", chk.holds,
                        None if chk.holds else chk.witness,
                        search_max=chk.search_max, rainbow=chk.rainbow_value)
    return rep


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "s-2": suite_s2,
    "compincr": suite_compincr,
    "QR": suite_qr,
    "half": suite_half,
    "D2": suite_d2,
    "b1b2": suite_b1b2,
    "seqopt": suite_seqopt,
    "r8-table": suite_r8_table,
    "main-desk": suite_main_desk,
    "kk": suite_kk,
    "rainbow": suite_rainbow,
}

SEEDED = {"s-2", "compincr", "QR"}


def run_suite(name: str, seed: int = 0, count: int | None = None) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name in SEEDED:
        return SUITES[name](seed=seed, **({} if count is None else {"count": count}))
    return SUITES[name]()

