from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from starforest import constructions as C
from starforest.hypercore import Graph, Hypergraph, is_linear
from starforest.oracle import clique_hypergraph

import bruteforce as bf


def test_complete_uniform_examples():
    assert len(C.complete_uniform(4, 3).edges) == 4
    assert len(C.complete_uniform(2, 3).edges) == 0
    assert len(C.complete_uniform(5, 2).edges) == 10


def test_star_and_copies():
    s = C.star_graph(3)
    assert (s.n, len(s.edges)) == (4, 3)
    m = C.copies(C.star_graph(1), 4)
    assert (m.n, m.edges) == (8, ((0, 1), (2, 3), (4, 5), (6, 7)))
    h = C.complete_uniform(4, 3)
    assert C.copies(h, 1) == h


def test_expansion_examples():
    s3 = C.expansion(C.star_graph(3), 3)
    assert (s3.n, len(s3.edges)) == (7, 3)
    assert all(set(a) & set(b) == {0} for a, b in combinations(s3.edges, 2))
    g = Graph(4, [(0, 1), (1, 2)])
    assert C.expansion(g, 2) is g
    m2 = C.expansion(C.copies(C.star_graph(1), 2), 4)
    assert len(m2.edges) == 2 and not set(m2.edges[0]) & set(m2.edges[1])


def test_circle_regular_examples():
    h = C.circle_regular(6, 3, 2)
    assert set(h.edges) == {(0, 1, 2), (3, 4, 5), (1, 2, 3), (0, 4, 5)}
    assert set(h.degrees()) == {2}
    assert C.circle_regular(9, 3, 0).edges == ()
    h = C.circle_regular(8, 4, 3)
    assert len(h.edges) == 6 and set(h.degrees()) == {3}


@pytest.mark.parametrize("args", [(7, 3, 1), (6, 3, 3), (3, 3, 1)])
def test_circle_regular_errors(args):
    with pytest.raises(C.ConstructionError):
        C.circle_regular(*args)


def test_lattice_examples():
    for r, d, nv, ne in [(4, 3, 64, 48), (5, 2, 25, 10), (6, 1, 6, 1)]:
        lat = C.lattice(r, d)
        assert (lat.n, len(lat.edges)) == (nv, ne)
        assert is_linear(lat.base)
        assert set(lat.base.degrees()) == {d}


def test_lattice_colors_are_axes():
    lat = C.lattice(3, 2)
    for e, c in zip(lat.edges, lat.colors):
        coords = [divmod(v, 3) for v in e]
        varying = [i for i in range(2) if len({p[i] for p in coords}) > 1]
        assert varying == [c]


def test_cartesian_product_examples():
    p = C.cartesian_product(C.lattice(2, 1), C.lattice(3, 1))
    assert p.n == 6
    assert sorted(len(e) for e in p.edges) == [2, 2, 2, 3, 3]
    g = Hypergraph(3, 2, [])
    q = C.cartesian_product(C.lattice(3, 1), g)
    assert len(q.edges) == 3 and all(len(e) == 3 for e in q.edges)
    assert is_linear(C.cartesian_product(C.lattice(2, 2), C.lattice(3, 2)).base)


def test_product_edge_count_formula():
    h, g = C.lattice(2, 2), C.lattice(3, 1)
    p = C.cartesian_product(h, g)
    assert len(p.edges) == h.n * len(g.edges) + g.n * len(h.edges)


def test_apex_examples():
    base = Hypergraph(4, 3, [(0, 1, 2)])
    lc = C.apex_extremal_expansion(4, 1, 3, base)
    assert lc.hypergraph == base and lc.apex == ()
    lc = C.apex_extremal_expansion(5, 2, 3, Hypergraph(4, 3))
    assert len(lc.hypergraph.edges) == 6 and all(0 in e for e in lc.hypergraph.edges)
    lc = C.apex_extremal_expansion(6, 3, 2, Hypergraph(4, 2))
    assert len(lc.hypergraph.edges) == 9
    with pytest.raises(C.ConstructionError, match="vertices"):
        C.apex_extremal_expansion(6, 2, 3, Hypergraph(4, 3))


def test_linear_star_forest_examples():
    lc = C.linear_star_forest_extremal(7, 2, 2, 3)
    h = lc.hypergraph
    assert len(h.edges) == 5 and is_linear(h)
    assert sum(1 for e in h.edges if 0 in e) == 3
    assert len(C.linear_star_forest_extremal(9, 1, 2, 3).hypergraph.edges) == 3
    assert len(C.linear_star_forest_extremal(5, 2, 1, 3).hypergraph.edges) == 2
    with pytest.raises(C.ConstructionError, match="multiple"):
        C.linear_star_forest_extremal(8, 2, 2, 3)


def test_linear_star_forest_inner_degree():
    lc = C.linear_star_forest_extremal(26, 3, 2, 3)
    a = set(lc.apex)
    for v in lc.rest:
        inside = sum(1 for e in lc.hypergraph.edges if v in e and a.isdisjoint(e))
        assert inside == 1


def test_linear_star_forest_linear_sweep():
    for r in range(2, 6):
        for k in range(1, 4):
            for l in range(1, 4):
                block = (r - 1) ** (k - 1) * r ** (l - 1)
                for mult in (1, 2):
                    n = block * mult + k - 1
                    if n > 200:
                        continue
                    assert is_linear(C.linear_star_forest_extremal(n, k, l, r).hypergraph)


def test_berge_star_examples():
    h = C.berge_star_extremal(8, 4, 3).hypergraph
    assert len(h.edges) == 8
    h = C.berge_star_extremal(6, 2, 3).hypergraph
    assert len(h.edges) == 2 and not set(h.edges[0]) & set(h.edges[1])
    assert C.berge_star_extremal(7, 1, 3).hypergraph.edges == ()
    lc = C.berge_star_extremal(10, 4, 3)
    assert len(lc.hypergraph.edges) == 2 * 4 + 0 and "class_2" in lc.labels


def test_large_r_examples():
    h = C.berge_forest_large_r(7, 2, 2, 3).hypergraph
    assert len(h.edges) == 3 and all(0 in e for e in h.edges)
    assert C.berge_forest_large_r(8, 1, 2, 4).hypergraph == C.berge_star_extremal(8, 2, 4).hypergraph
    with pytest.raises(C.ConstructionError, match="divides|\\|"):
        C.berge_forest_large_r(11, 3, 2, 4)


def test_small_r_examples():
    assert len(C.berge_forest_small_r(10, 2, 3, 3).hypergraph.edges) == 12
    lc = C.berge_forest_small_r(9, 3, 2, 3)
    assert len(lc.hypergraph.edges) == 13 and lc.meta["t"] == 1
    assert C.berge_forest_small_r(8, 1, 4, 3).hypergraph == C.berge_star_extremal(8, 4, 3).hypergraph


def test_llp_examples():
    assert len(C.llp_extremal_graph(10, 2, 3).hypergraph.edges) == 18
    assert len(C.llp_extremal_graph(9, 1, 2).hypergraph.edges) == 4
    for n, k in [(6, 2), (9, 3), (12, 4)]:
        h = C.llp_extremal_graph(n, k, 1).hypergraph
        assert len(h.edges) == (k - 1) * (n - k + 1) + (k - 1) * (k - 2) // 2
    with pytest.raises(C.ConstructionError):
        C.llp_extremal_graph(4, 2, 3)


def test_quasi_regular_degrees():
    for m in range(2, 14):
        for d in range(0, m):
            g = C.quasi_regular_graph(m, d)
            assert max(g.degrees(), default=0) <= d
            assert len(g.edges) == d * m // 2


def test_clique_join_matches_small_r():
    for n, k, l, r in [(10, 2, 3, 3), (9, 3, 2, 3), (11, 2, 4, 3), (8, 1, 4, 3), (12, 3, 3, 4)]:
        g = C.clique_join_graph(n, k, l)
        assert clique_hypergraph(g, r) == C.berge_forest_small_r(n, k, l, r).hypergraph


def test_label_partition_and_prediction_guard():
    lc = C.berge_forest_small_r(10, 2, 3, 3)
    assert lc.label_text().splitlines()[0] == "A=0"
    with pytest.raises(C.ConstructionError, match="predicted"):
        C.LabeledConstruction("x", Hypergraph(3, 2, [(0, 1)]), {"B": (0, 1, 2)}, {}, Fraction(2))
    with pytest.raises(C.ConstructionError, match="partition"):
        C.LabeledConstruction("x", Hypergraph(3, 2, []), {"B": (0, 1)}, {}, Fraction(0))


@pytest.mark.parametrize(
    "build,pattern,k,l",
    [
        (lambda: C.berge_forest_small_r(10, 2, 3, 3), "berge-star-forest", 2, 3),
        (lambda: C.berge_forest_large_r(7, 2, 2, 3), "berge-star-forest", 2, 2),
        (lambda: C.berge_star_extremal(8, 4, 3), "berge-star", 1, 4),
        (lambda: C.linear_star_forest_extremal(7, 2, 2, 3), "expansion-star-forest", 2, 2),
        (lambda: C.llp_extremal_graph(8, 2, 2), "graph-star-forest", 2, 2),
    ],
)
def test_constructions_free_by_brute_force(build, pattern, k, l):
    h = build().hypergraph
    assert not bf.contains(list(h.edges), h.n, pattern, k, l)


def test_small_r_degree_profile_when_classes_are_full():
    for k in range(1, 4):
        for l in range(1, 5):
            for r in range(2, l + k):
                n = 3 * l + k - 1
                lc = C.berge_forest_small_r(n, k, l, r)
                degs = {lc.hypergraph.degree(v) for v in lc.rest}
                assert degs == {comb(l + k - 2, r - 1)}
