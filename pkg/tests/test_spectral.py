import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotlab.anf import BooleanFunction, Z4Function, family_member, parse_anf
from pivotlab.checks import GENPIV
from pivotlab.graph import Graph, max_clique_size
from pivotlab.orbits import all_graphs
from pivotlab.spectral import (
    BudgetError,
    SpectralVector,
    TransformSpec,
    apply,
    apply_kernel,
    bipolar,
    clique_upper_bound,
    component_bound,
    count_flat,
    count_flat_quadratic,
    count_flat_quadratic_by_rank,
    family_flat_counts,
    flat_specs,
    is_flat,
    is_flat_quadratic,
    phase_vector,
)
from strategies import functions, graphs

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
N = np.array([[1, 1j], [1, -1j]], dtype=complex) / np.sqrt(2)
KERNELS = {"I": np.eye(2), "H": H, "N": N}


def dense(spec):
    # variable k is bit k of the index, so the last letter is the leftmost factor
    out = np.array([[1.0]])
    for c in spec:
        out = np.kron(KERNELS[c], out)
    return out


def amps(s):
    return np.array(s.values())


def test_bipolar_examples():
    assert bipolar(BooleanFunction.zero(1)).values() == [1, 1]
    assert bipolar(parse_anf("n=2; x0*x1")).re.tolist() == [1, 1, 1, -1]
    v = phase_vector(parse_anf("n=1; x0"), Z4Function.lift(parse_anf("n=1; x0")))
    assert (v.re.tolist(), v.im.tolist()) == ([0, -1], [0, 0])


def test_kernel_examples():
    one = SpectralVector(1, [1, 1])
    h = apply_kernel(one, 0, "H")
    assert (h.re.tolist(), h.half_pow) == ([2, 0], 1)
    nn = apply_kernel(one, 0, "N")
    assert (nn.re.tolist(), nn.im.tolist(), nn.half_pow) == ([1, 1], [1, -1], 1)
    edge = bipolar(parse_anf("n=2; x0*x1"))
    hh = apply(edge, "HH")
    assert hh.half_pow == 2 and set(np.abs(amps(hh)).round(9)) == {1.0}
    assert is_flat(hh)
    assert not is_flat(apply(edge, "HI"))


@given(functions(max_n=5), st.data())
def test_apply_matches_dense_kron(p, data):
    spec = "".join(data.draw(st.lists(st.sampled_from("IHN"), min_size=p.n, max_size=p.n)))
    want = dense(spec) @ np.array(bipolar(p).values())
    assert np.allclose(amps(apply(bipolar(p), spec)), want)


@given(functions(max_n=6), st.data())
def test_transforms_are_unitary(p, data):
    spec = "".join(data.draw(st.lists(st.sampled_from("IHN"), min_size=p.n, max_size=p.n)))
    s = apply(bipolar(p), spec)
    assert s.norm2() == (1 << p.n) << s.half_pow


def test_scaled_equal():
    a = SpectralVector(1, [2, 0], half_pow=2)
    b = SpectralVector(1, [1, 0], half_pow=0)
    assert a == b
    assert a != SpectralVector(1, [1, 0], half_pow=1)


def test_count_examples():
    for n in (3, 4):
        assert count_flat(Graph.complete(n).to_function()) == 2 ** (n - 1)
    assert count_flat(BooleanFunction.zero(4)) == 1
    cubic = parse_anf(GENPIV)
    assert len(cubic.terms) == 16 and cubic.degree == 3
    assert count_flat(cubic) == 2
    assert is_flat(apply(bipolar(cubic), "H" * 6))


def test_flat_specs_order_and_families():
    p = parse_anf("n=2; x0*x1")
    assert flat_specs(p, "IH") == ["II", "HH"]
    ihn = flat_specs(p, "IHN")
    assert ihn == sorted(ihn, key=lambda s: ["IHN".index(c) for c in s])
    assert set(flat_specs(p, "HN")) == {s for s in ihn if "I" not in s}


def test_budget():
    with pytest.raises(BudgetError):
        count_flat(BooleanFunction.zero(10), "IHN")
    # constant: I or N at every position, never H
    assert count_flat(BooleanFunction.zero(10), "IHN", max_n=10) == 2**10


@given(graphs(max_n=6))
def test_rank_criterion_matches_direct(g):
    p = g.to_function()
    direct = set(flat_specs(p, "IHN"))
    for spec in itertools.product("IHN", repeat=g.n):
        s = "".join(spec)
        assert is_flat_quadratic(g, s) == (s in direct)


@given(graphs(max_n=8), st.sampled_from(["IH", "IHN", "HN"]))
def test_fast_count_matches_rank_count(g, family):
    assert count_flat_quadratic(g, family) == count_flat_quadratic_by_rank(g, family)


def test_empty_spec_counts_flat():
    g = Graph.complete(3)
    assert is_flat_quadratic(g, "III")
    assert count_flat_quadratic(Graph.empty(5), "IH") == 1


@pytest.mark.parametrize("n", range(2, 21))
def test_clique_rank_path(n):
    assert count_flat_quadratic(Graph.complete(n), "IH") == 2 ** (n - 1)


def test_component_bound():
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert component_bound(two) == 16 == count_flat(two.to_function())
    k4 = Graph.complete(4)
    assert component_bound(k4) == count_flat_quadratic(k4) == 8


@given(graphs(max_n=7), st.sampled_from(["IH", "IHN"]))
def test_component_bound_is_lower_bound(g, family):
    assert component_bound(g, family) <= count_flat_quadratic(g, family)


def test_clique_corollary_audit():
    # stated bound fails already for a single vertex; one more than it holds for n <= 7
    violations = 0
    for n in range(1, 8):
        for rows in all_graphs(n):
            g = Graph(n, rows)
            bound = clique_upper_bound(count_flat_quadratic(g))
            nx = max_clique_size(g)
            violations += nx > bound
            assert nx <= bound + 1
    assert violations > 0
    assert clique_upper_bound(8) == 3


def test_family_examples():
    r = family_flat_counts(4, 0)
    assert r["ih_count"] == r["ih_bound"] == 8
    r = family_flat_counts(6, 3, parse_anf("n=6; x0*x1*x2"), ihn=False)
    assert r["ih_count"] == r["ih_bound"] == 16
    r = family_flat_counts(5, 2)
    assert r["ih_count"] >= 12 and r["ihn_count"] >= r["ihn_bound"]


@pytest.mark.parametrize("n,t", [(n, t) for n in range(1, 7) for t in range(n)])
def test_family_lower_bounds_h_zero(n, t):
    r = family_flat_counts(n, t)
    assert r["ih_count"] >= r["ih_bound"]
    assert r["ihn_count"] >= r["ihn_bound"]


def test_family_tightness_at_t2_fails():
    # h = x0 x1 turns the t=2 member into a clique, so the count is 2^{n-1}, not 3 * 2^{n-3}
    for n in range(3, 8):
        f = family_member(n, 2, parse_anf(f"n={n}; x0*x1"))
        assert f == Graph.complete(n).to_function()
        assert count_flat(f) == 2 ** (n - 1) > 3 * 2 ** (n - 3)


def test_spec_sets():
    s = TransformSpec.from_sets(4, r_h=[1], r_n=[3])
    assert str(s) == "IHIN" and s.r_i == [0, 2]
    with pytest.raises(ValueError):
        TransformSpec.from_sets(2, r_h=[0], r_n=[0])
    with pytest.raises(ValueError):
        TransformSpec("IX")
