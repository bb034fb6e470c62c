from __future__ import annotations

import random

import networkx as nx
from hypothesis import given, settings

from bdcliques.canon import are_isomorphic, canonical_form, canonical_graph, certificate, orbits, refine
from bdcliques.graph import Graph, disjoint_union

from conftest import graphs, random_graph, to_nx


def shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def petersen() -> Graph:
    return Graph.from_edges(10, nx.petersen_graph().edges())


@settings(max_examples=200, deadline=None)
@given(graphs(10))
def test_certificate_is_label_invariant(g):
    rng = random.Random(g.num_edges * 31 + g.n)
    h = shuffled(g, rng)
    assert certificate(g) == certificate(h)
    assert canonical_graph(g) == canonical_graph(h)


def test_agrees_with_networkx(rng):
    for _ in range(600):
        n = rng.randint(1, 9)
        g, h = random_graph(rng, n, rng.random()), random_graph(rng, n, rng.random())
        if rng.random() < 0.3:
            h = shuffled(g, rng)
        assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_regular_graphs_distinguished():
    # C_6 vs two triangles: equal degree sequences, refinement alone is stuck
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    two_k3 = disjoint_union(Graph.complete(3), Graph.complete(3))
    assert not are_isomorphic(c6, two_k3)
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert not are_isomorphic(prism, k33)


def test_generators_are_automorphisms():
    for g in (petersen(), Graph.complete(6), disjoint_union(*[Graph.complete(2)] * 5)):
        res = canonical_form(g)
        for gamma in res.generators:
            assert sorted(gamma) == list(range(g.n))
            assert g.relabel(gamma) == g
    assert set(orbits(10, canonical_form(petersen()).generators)) == {0}


def test_orbits_of_star():
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    orb = orbits(5, canonical_form(star).generators)
    assert orb[0] == 0 and len(set(orb[1:])) == 1


def test_colours_respected():
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    a = canonical_form(p3, colors=[1, 0, 0]).certificate
    b = canonical_form(p3, colors=[0, 0, 1]).certificate
    c = canonical_form(p3, colors=[0, 1, 0]).certificate
    assert a == b and a != c


def test_refine_is_equitable():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    cells = refine(g.adj, [list(range(5))])
    for cell in cells:
        for other in cells:
            mask = sum(1 << v for v in other)
            assert len({(g.adj[v] & mask).bit_count() for v in cell}) == 1
    assert sorted(map(sorted, cells)) == [[0, 4], [1, 3], [2]]


def test_empty_graph():
    assert certificate(Graph.empty(0)) == (0, ())
    assert are_isomorphic(Graph.empty(3), Graph.empty(3))
