from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given

from pivotlab.canon import canon_key
from pivotlab.graph import Graph, pivot, pivot_rows
from pivotlab.orbits import (
    _UnionFind,
    all_graphs,
    bipartite_orbit_reps,
    classify,
    edge_list,
    euler_transform,
    extend_bipartite,
    in_universe,
    labelled_closure,
    labelled_graphs,
    lc_orbit,
    pivot_orbit,
    read_reps,
    rows_bipartition,
    unlabelled_closure,
    write_reps,
)
from pivotlab.spectral import BudgetError
from strategies import graphs


def orbit_count(keys):
    seen, count = set(), 0
    for k in keys:
        if k not in seen:
            seen |= unlabelled_closure(k, "pivot")
            count += 1
    return count


def test_universe_sizes():
    assert [len(all_graphs(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]
    assert [sum(1 for _ in labelled_graphs(n, "connected")) for n in range(1, 6)] == [1, 1, 4, 38, 728]
    assert sum(1 for _ in labelled_graphs(4, "bipartite-all")) == 41


def test_single_orbits():
    k3 = pivot_orbit(Graph.complete(3))
    assert k3.size == 1 and k3.labelled_size == 1
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    rep = pivot_orbit(star, "labelled")
    assert rep.labelled_size == rep.size == 4
    assert rep.bipartite and rep.partition_sizes == (3, 1)
    assert lc_orbit(Graph.path(3)).members == lc_orbit(Graph.complete(3)).members
    assert set(rep.as_dict()) >= {"size", "representative", "partition_sizes"}


@given(graphs(max_n=6))
def test_orbit_closure(g):
    orbit = labelled_closure(g.rows)
    for rows in orbit:
        for u, v in edge_list(rows):
            assert pivot_rows(rows, u, v) in orbit
    keys = unlabelled_closure(g.rows)
    assert {canon_key(r) for r in orbit} <= keys


@given(graphs(max_n=6))
def test_pivot_orbit_inside_lc_orbit(g):
    assert unlabelled_closure(g.rows, "pivot") <= unlabelled_closure(g.rows, "lc")


def test_lc_orbits_partition_into_pivot_orbits():
    for n in range(1, 8):
        pivot_reps = [r for r in all_graphs(n) if in_universe(r, "connected")]
        owner = {}
        for key in pivot_reps:
            lc = min(unlabelled_closure(key, "lc"))
            for member in unlabelled_closure(key, "pivot"):
                assert owner.setdefault(member, lc) == lc
        assert len(set(owner.values())) == classify(n, "lc", "connected").count


@pytest.mark.parametrize(
    "n,move,universe,mode,want",
    [
        (3, "pivot", "all", "unlabelled", 4),
        (4, "pivot", "connected", "labelled", 11),
        (6, "pivot", "bipartite-connected", "unlabelled", 8),
        (6, "lc", "connected", "unlabelled", 11),
        (7, "pivot", "connected", "unlabelled", 134),
        (7, "lc", "all", "unlabelled", 59),
        (5, "pivot", "bipartite-all", "labelled", 92),
    ],
)
def test_classify_examples(n, move, universe, mode, want):
    assert classify(n, move, universe, mode).count == want


def test_extension_counts():
    edge = Graph.from_edges(2, [(0, 1)])
    assert len(extend_bipartite([edge])) == 2 ** 1 + 2 ** 1 - 2
    p6 = [Graph(6, r) for r in bipartite_orbit_reps(6)]
    assert orbit_count(sorted({canon_key(g.rows) for g in extend_bipartite(p6)})) == 15


@pytest.mark.parametrize("n", range(1, 8))
def test_extension_matches_direct(n):
    for universe in ("bipartite-connected", "bipartite-all"):
        ext = classify(n, "pivot", universe, method="extension")
        direct = classify(n, "pivot", universe, method="direct")
        assert ext.representatives == direct.representatives


@pytest.mark.slow
def test_extension_matches_direct_n8():
    for universe in ("bipartite-connected", "bipartite-all"):
        ext = classify(8, "pivot", universe, method="extension")
        direct = classify(8, "pivot", universe, method="direct")
        assert ext.count == direct.count and ext.representatives == direct.representatives


@pytest.mark.parametrize("n", range(1, 7))
def test_swap_convention_does_not_change_unlabelled_counts(n):
    for universe in ("connected", "all"):
        keys = [k for k in all_graphs(n) if in_universe(k, universe)]
        index = {k: i for i, k in enumerate(keys)}
        uf = _UnionFind(len(keys))
        for i, rows in enumerate(keys):
            for u, v in edge_list(rows):
                uf.union(i, index[canon_key(pivot_rows(rows, u, v, swap=False))])
        roots = {uf.find(i) for i in range(len(keys))}
        assert len(roots) == classify(n, "pivot", universe).count


def _automorphisms(rows):
    n = len(rows)
    g = Graph(n, rows)
    return sum(1 for p in permutations(range(n)) if g.relabel(p).rows == rows)


@pytest.mark.parametrize("n", range(1, 6))
def test_labelled_automorphism_audit(n):
    # each unlabelled orbit covers sum(n!/|Aut|) labelled graphs, tiled exactly by labelled orbits
    by_class = {}
    for rows in labelled_graphs(n):
        by_class.setdefault(canon_key(rows), []).append(rows)
    total = 0
    labelled_orbits = 0
    seen_classes = set()
    for key in all_graphs(n):
        if key in seen_classes:
            continue
        classes = unlabelled_closure(key)
        seen_classes |= classes
        members = {r for c in classes for r in by_class[c]}
        assert len(members) == sum(factorial(n) // _automorphisms(c) for c in classes)
        covered = set()
        while covered != members:
            start = min(members - covered)
            orbit = labelled_closure(start)
            assert orbit <= members and not orbit & covered
            covered |= orbit
            labelled_orbits += 1
        total += len(members)
    assert total == 2 ** comb(n, 2)
    assert labelled_orbits == classify(n, "pivot", "all", "labelled").count


def test_euler_transform():
    # connected graphs -> all graphs
    assert euler_transform([1, 1, 2, 6, 21]) == [1, 2, 4, 11, 34]
    i_p = [1, 1, 2, 4, 10, 35, 134]
    assert euler_transform(i_p) == [1, 2, 4, 9, 21, 64, 218]


def test_pivot_keeps_bipartite_universe():
    for rows in labelled_graphs(5, "bipartite-connected"):
        for nxt in labelled_closure(rows):
            assert rows_bipartition(nxt) is not None


def test_budget_and_errors():
    with pytest.raises(BudgetError):
        classify(9, "pivot", "connected")
    with pytest.raises(BudgetError):
        classify(7, "pivot", "connected", "labelled")
    with pytest.raises(ValueError):
        classify(4, "lc", "bipartite-connected")
    with pytest.raises(ValueError):
        classify(4, "pivot", "connected", method="extension")
    with pytest.raises(BudgetError):
        classify(3, "pivot", "connected", budget=2)


def test_rep_database_round_trip(tmp_path):
    res = classify(5, "pivot", "connected")
    path = tmp_path / "reps.txt"
    write_reps(str(path), res.representatives)
    lines = path.read_text().splitlines()
    assert lines == sorted(lines) == list(res.representatives)
    graphs_back = read_reps(str(path))
    assert len(graphs_back) == 10
    assert all(pivot_orbit(g).representative.rows == canon_key(g.rows) for g in graphs_back)


def test_pivot_orbit_representative_is_least_key():
    g = Graph.path(4)
    rep = pivot_orbit(g)
    assert rep.representative.rows == min(rep.members)
    assert canon_key(pivot(g, 0, 1).rows) in rep.members
