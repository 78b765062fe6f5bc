from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starforest.constructions import berge_forest_small_r, complete_uniform, expansion, lattice, star_graph
from starforest.hypercore import (
    FormatError,
    Graph,
    Hypergraph,
    HypergraphError,
    MultiHypergraph,
    SizeLimitError,
    canonical_form,
    degree,
    disjoint_union,
    empty_hypergraph,
    is_isomorphic,
    is_linear,
    link_hypergraph,
    parse_hypergraph,
    write_hypergraph,
)

import bruteforce as bf


@st.composite
def hypergraphs(draw, max_n=7, rs=(2, 3, 4)):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(min_value=r, max_value=max_n))
    pool = list(combinations(range(n), r))
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=min(len(pool), 12)))
    return Hypergraph(n, r, chosen)


def test_normal_form_sorts_edges_and_vertices():
    h = Hypergraph(5, 3, [(4, 2, 0), (1, 0, 2)])
    assert h.edges == ((0, 1, 2), (0, 2, 4))


@pytest.mark.parametrize(
    "n,r,edges,msg",
    [
        (4, 3, [(0, 1)], "size"),
        (4, 2, [(1, 1)], "repeated"),
        (3, 2, [(0, 3)], "out of range"),
        (4, 2, [(0, 1), (1, 0)], "duplicate"),
    ],
)
def test_invalid_edges_rejected(n, r, edges, msg):
    with pytest.raises(HypergraphError, match=msg):
        Hypergraph(n, r, edges)


def test_degree_examples():
    k43 = complete_uniform(4, 3)
    assert degree(k43, 0) == 3
    assert degree(empty_hypergraph(5, 3), 2) == 0
    h = berge_forest_small_r(10, 2, 3, 3)
    # each class plus the apex spans a K_4^3, so a class vertex sees C(3, 2) edges
    b = [v for v in range(10) if v not in h.apex]
    assert {degree(h.hypergraph, v) for v in b} == {3}


def test_degree_out_of_range():
    with pytest.raises(HypergraphError):
        link_hypergraph(complete_uniform(4, 3), 4)


def test_link_examples():
    link = link_hypergraph(complete_uniform(4, 3), 0)
    assert isinstance(link, MultiHypergraph)
    assert link.edges == ((1, 2), (1, 3), (2, 3))
    assert link_hypergraph(empty_hypergraph(4, 3), 1).edges == ()
    h = berge_forest_small_r(10, 2, 3, 3)
    # apex: three classes, C(3, 2) edges through it in each
    assert len(link_hypergraph(h.hypergraph, h.apex[0]).edges) == 9


def test_linearity_examples():
    assert is_linear(lattice(4, 3).base)
    assert not is_linear(complete_uniform(4, 3))
    assert is_linear(Graph(5, combinations(range(5), 2)))


def test_disjoint_union_examples():
    u = disjoint_union(complete_uniform(3, 3), complete_uniform(3, 3))
    assert (u.n, len(u.edges)) == (6, 2)
    h = complete_uniform(4, 3)
    assert disjoint_union(h, empty_hypergraph(0, 3)) == h
    s = disjoint_union(star_graph(2), star_graph(2))
    assert isinstance(s, Graph) and (s.n, len(s.edges)) == (6, 4)
    with pytest.raises(HypergraphError, match="uniformity"):
        disjoint_union(h, star_graph(2))


def test_canonical_form_examples():
    k43 = complete_uniform(4, 3)
    assert canonical_form(k43) == canonical_form(k43.relabel([2, 0, 3, 1]))
    p2 = Graph(4, [(0, 1), (1, 2)])
    m2 = Graph(4, [(0, 1), (2, 3)])
    assert canonical_form(p2) != canonical_form(m2)
    forms = {canonical_form(Hypergraph(4, 3, pair)) for pair in combinations(combinations(range(4), 3), 2)}
    assert len(forms) == 1


def test_canonical_form_size_limit():
    with pytest.raises(SizeLimitError):
        canonical_form(empty_hypergraph(13, 2))


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.randoms(use_true_random=False))
def test_canonical_form_permutation_invariant(h, rnd):
    perm = list(range(h.n))
    rnd.shuffle(perm)
    assert canonical_form(h) == canonical_form(h.relabel(perm))


@settings(max_examples=120, deadline=None)
@given(hypergraphs(max_n=6), hypergraphs(max_n=6))
def test_canonical_form_separates_exactly_isomorphism(a, b):
    if (a.n, a.r) != (b.n, b.r):
        return
    assert is_isomorphic(a, b) == bf.isomorphic(a.n, a.edges, b.edges)


@settings(max_examples=200, deadline=None)
@given(hypergraphs())
def test_handshake_and_link_size(h):
    assert sum(h.degrees()) == h.r * len(h.edges)
    for x in range(h.n):
        assert len(link_hypergraph(h, x).edges) == degree(h, x)


@settings(max_examples=100, deadline=None)
@given(hypergraphs(rs=(2,)), st.integers(min_value=2, max_value=5))
def test_expansion_is_linear(g, r):
    assert is_linear(expansion(Graph.from_hypergraph(g), r))


@settings(max_examples=200, deadline=None)
@given(hypergraphs())
def test_write_parse_round_trip(h):
    text = write_hypergraph(h)
    assert parse_hypergraph(text) == h
    assert write_hypergraph(parse_hypergraph(text)) == text


def test_parse_examples():
    h = parse_hypergraph("4 3\n0 1 2\n0 1 3\n")
    assert (h.n, h.r, len(h.edges)) == (4, 3, 2)
    with pytest.raises(FormatError, match="repeated vertex"):
        parse_hypergraph("3 2\n0 0\n")


@pytest.mark.parametrize(
    "text,msg",
    [
        ("4 3\n0 1 2", "trailing newline"),
        ("4\n0 1 2\n", "header"),
        ("x 3\n", "header"),
        ("4 3\n0 1\n", "expected 3"),
        ("4 2\n0 4\n", "out of range"),
        ("4 2\n0 1\n0 1\n", "duplicate"),
        ("4 2\n1 2\n0 1\n", "lexicographic"),
        ("4 2\n1 0\n", "increasing"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        parse_hypergraph(text)


def test_parse_comments_and_multi():
    m = parse_hypergraph("# link\n3 *\n0\n0\n1 2\n")
    assert isinstance(m, MultiHypergraph)
    assert m.multiplicities()[(0,)] == 2
    assert write_hypergraph(m) == "3 *\n0\n0\n1 2\n"


def test_non_strict_parse_normalizes():
    h = parse_hypergraph("4 2\n2  1\n0 3", strict=False)
    assert h.edges == ((0, 3), (1, 2))


def test_colored_lattice_classes_are_perfect_matchings():
    for r, d in [(2, 3), (3, 2), (4, 2), (4, 3)]:
        lat = lattice(r, d)
        for cls in lat.color_classes().values():
            covered = [v for e in cls for v in e]
            assert sorted(covered) == list(range(lat.n))


def test_colored_hypergraph_rejects_improper_coloring():
    from starforest.hypercore import ColoredHypergraph

    with pytest.raises(HypergraphError, match="matching"):
        ColoredHypergraph(Graph(3, [(0, 1), (1, 2)]), [0, 0])
