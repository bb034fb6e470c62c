from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from bdcliques.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_cliques(g: Graph, t: int) -> int:
    """Reference k_t via networkx clique enumeration."""
    return sum(1 for c in nx.enumerate_all_cliques(to_nx(g)) if len(c) == t)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, max_n: int = 10) -> Graph:
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)


def k4_minus_edge() -> Graph:
    """K_4 minus {3,4} in 1-based labels, i.e. minus (2,3) here."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


# --- acceptance summary ---------------------------------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "parts": []})
    entry["parts"].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        ok = all(p for _, p in entry["parts"])
        detail = ", ".join(f"{name}={'pass' if p else 'FAIL'}" for name, p in entry["parts"])
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {entry['title']}  [{detail}]")
