from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotlab.anf import parse_anf
from pivotlab.graph import (
    Graph,
    GraphFormatError,
    InadmissibleEdgeError,
    NotAnEdgeError,
    admissible_edges,
    bipartition,
    clique_split_predict,
    clique_split_sets,
    components,
    format_graph,
    format_hex_rows,
    hyper_pivot,
    is_admissible,
    is_clique,
    local_complement,
    max_clique_size,
    parse_graph,
    pivot,
)
from pivotlab.orbits import labelled_graphs
from strategies import graphs, graphs_with_edge

P3 = Graph.path(3)
K3 = Graph.complete(3)


def edges(g):
    return set(g.edges())


def test_lc_examples():
    assert local_complement(P3, 1) == K3
    assert local_complement(local_complement(P3, 1), 1) == P3
    assert edges(local_complement(K3, 0)) == {(0, 1), (0, 2)}


def test_pivot_examples():
    assert edges(pivot(P3, 0, 1)) == {(0, 1), (0, 2)}
    for u, v in K3.edges():
        assert pivot(K3, u, v) == K3
    with pytest.raises(NotAnEdgeError):
        pivot(P3, 0, 2)


@given(graphs(max_n=7), st.data())
def test_lc_is_involution(g, data):
    i = data.draw(st.integers(0, g.n - 1))
    assert local_complement(local_complement(g, i), i) == g


@given(graphs_with_edge())
def test_pivot_is_lc_triple(case):
    g, u, v = case
    lc = local_complement
    want = lc(lc(lc(g, u), v), u)
    assert pivot(g, u, v) == want
    assert lc(lc(lc(g, v), u), v) == want


@given(graphs_with_edge())
def test_pivot_twice_is_identity(case):
    g, u, v = case
    assert pivot(pivot(g, u, v), u, v) == g
    assert pivot(pivot(g, u, v, swap=False), u, v, swap=False) == g


def test_pivot_twice_exhaustive_connected():
    for n in range(2, 7):
        for rows in labelled_graphs(n, "connected"):
            g = Graph(n, rows)
            for u, v in g.edges():
                assert pivot(pivot(g, u, v), u, v) == g


@given(graphs_with_edge())
def test_swap_only_relabels(case):
    g, u, v = case
    perm = list(range(g.n))
    perm[u], perm[v] = v, u
    assert pivot(g, u, v) == pivot(g, u, v, swap=False).relabel(perm)


def _side_sizes(g):
    bip = bipartition(g)
    if bip is None:
        return None
    first = set(bip[0])
    out = []
    for comp in components(g):
        a = sum(1 for x in comp if x in first)
        out.append((tuple(comp), tuple(sorted((a, len(comp) - a)))))
    return out


@given(graphs_with_edge())
def test_pivot_keeps_bipartition_sizes(case):
    g, u, v = case
    before = _side_sizes(g)
    if before is not None:
        assert _side_sizes(pivot(g, u, v)) == before


@given(graphs_with_edge())
def test_hyper_pivot_matches_graph_pivot(case):
    g, u, v = case
    p = g.to_function()
    assert Graph.from_function(hyper_pivot(p, u, v)) == pivot(g, u, v)


def test_hyper_pivot_examples():
    p = parse_anf("n=3; x0*x1+x1*x2")
    assert hyper_pivot(p, 0, 1) == parse_anf("n=3; x0*x1+x0*x2")
    q = parse_anf("n=4; x0*x1+x1*x2*x3")
    assert hyper_pivot(q, 0, 1) == parse_anf("n=4; x0*x1+x0*x2*x3")
    bad = parse_anf("n=3; x0*x1+x0*x1*x2")
    assert not is_admissible(bad, 0, 1)
    with pytest.raises(InadmissibleEdgeError):
        hyper_pivot(bad, 0, 1)
    assert admissible_edges(q) == [(0, 1)]


def test_structure_examples():
    assert bipartition(K3) is None
    assert len(components(K3)) == 1
    assert max_clique_size(K3) == 3
    assert bipartition(P3) == ([0, 2], [1])
    assert max_clique_size(P3) == 2
    star = Graph.from_edges(3, [(0, 1), (0, 2)])
    a, b = bipartition(star)
    assert sorted((len(a), len(b))) == [1, 2]


@given(graphs(max_n=7))
def test_max_clique_is_a_clique(g):
    k = max_clique_size(g)
    assert any(is_clique(g, c) for c in combinations(range(g.n), k))
    assert not any(is_clique(g, c) for c in combinations(range(g.n), k + 1))


def test_clique_split_examples():
    # K4 on 0..3 plus a pendant vertex 4 on 3
    g = Graph.from_edges(5, [(a, b) for a in range(4) for b in range(a + 1, 4)] + [(3, 4)])
    assert clique_split_predict(g, range(4), 0, 1) == [4]
    # u inside, v outside: u = 3, v = 4, no common neighbours in C_4
    assert clique_split_predict(g, range(4), 3, 4) == [2, 4]
    assert clique_split_predict(g, [0, 1], 3, 4) == [2]


@given(graphs_with_edge(max_n=7), st.data())
def test_clique_split_sets_are_cliques_after_pivot(case, data):
    g, u, v = case
    seed = data.draw(st.integers(0, g.n - 1))
    clique = [seed]
    for x in range(g.n):
        if x != seed and all(g.has_edge(x, y) for y in clique):
            clique.append(x)
    ends = (1 << u) | (1 << v)
    nu, nv = g.rows[u] & ~ends, g.rows[v] & ~ends
    classes = (nu & ~nv, nv & ~nu, nu & nv)
    mask = sum(1 << x for x in clique)
    if (u in clique) == (v in clique) and sum(1 for c in classes if c & mask) > 1:
        return  # the invariance claim does not cover this case; see the regression test below
    h = pivot(g, u, v)
    for s in clique_split_sets(g, clique, u, v):
        assert is_clique(h, s)


def test_outside_clique_can_break():
    # K4 on {2,3,4,5}; 0 ~ {2,3}, 1 ~ {4,5}; pivoting 01 toggles the 2-4, 2-5, 3-4, 3-5 edges
    edges_ = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]
    edges_ += [(a, b) for a in range(2, 6) for b in range(a + 1, 6)]
    g = Graph.from_edges(6, edges_)
    assert clique_split_predict(g, [2, 3, 4, 5], 0, 1) == [4]
    assert not is_clique(pivot(g, 0, 1), [2, 3, 4, 5])
    assert max_clique_size(pivot(g, 0, 1)) == 3


@given(graphs(max_n=8))
def test_text_round_trips(g):
    assert parse_graph(format_graph(g)) == g
    assert parse_graph(format_hex_rows(g.rows)) == g


def test_format_errors():
    with pytest.raises(GraphFormatError):
        parse_graph("3\n0 1")
    with pytest.raises(GraphFormatError):
        parse_graph("n=3\n0 7")
    with pytest.raises(GraphFormatError):
        Graph(2, (2, 0))
