from itertools import permutations

from hypothesis import given
from hypothesis import strategies as st

from pivotlab.canon import brute_force_min, canon_key, canonical_form, canonical_rows, is_isomorphic
from pivotlab.checks import check_canonical
from pivotlab.graph import Graph
from pivotlab.orbits import all_graphs
from strategies import graphs


def relabel_rows(rows, order):
    # vertex order[k] becomes k
    pos = {v: k for k, v in enumerate(order)}
    return Graph(len(rows), rows).relabel([pos[v] for v in range(len(rows))]).rows


def test_p3_labellings_agree():
    forms = {canonical_form(Graph.path(3).relabel(p)) for p in permutations(range(3))}
    assert len(forms) == 1


def test_k4_minus_edge_one_form():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert len({canonical_form(g.relabel(p)) for p in permutations(range(4))}) == 1


@given(graphs(max_n=9), st.data())
def test_relabel_invariance(g, data):
    perm = data.draw(st.permutations(list(range(g.n))))
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@given(graphs(max_n=8))
def test_order_reproduces_form(g):
    best, order = canonical_rows(g.rows)
    assert sorted(order) == list(range(g.n))
    assert relabel_rows(g.rows, order) == best


def test_isomorphism_classes_match_brute_force():
    # one class per unlabelled graph, and the partition matches the all-permutation minimum
    for n in range(1, 6):
        reps = all_graphs(n)
        assert len({canon_key(r) for r in reps}) == len(reps)
        assert len({brute_force_min(r) for r in reps}) == len(reps)


def test_check_canonical_suite_small():
    res = check_canonical(max_n=6, labelled_max_n=4, relabels=2)
    assert res.ok, res.failures


def test_colours_restrict_relabelling():
    star = Graph.from_edges(3, [(0, 1), (0, 2)])
    a = canonical_form(star, colors=[0, 1, 1])
    b = canonical_form(star.relabel([1, 0, 2]), colors=[1, 0, 1])
    c = canonical_form(star, colors=[1, 0, 1])
    assert a == b
    assert a != c
    assert a.color_sizes == (1, 2)


def test_form_fields():
    cf = canonical_form(Graph.complete(3))
    assert cf.hex == "3:6,5,3"
    assert cf.hex_rows == ["6", "5", "3"]
    assert len(cf.certificate) == 16
    assert cf.graph() == Graph.complete(3)
    assert is_isomorphic(Graph.path(4), Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)]))
    assert not is_isomorphic(Graph.path(4), Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]))
