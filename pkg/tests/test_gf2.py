from hypothesis import given
from hypothesis import strategies as st

from pivotlab import gf2

matrices = st.integers(1, 7).flatmap(
    lambda w: st.tuples(st.just(w), st.lists(st.integers(0, (1 << w) - 1), max_size=7))
)


def span(rows):
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


@given(matrices)
def test_rank_is_log_of_span(case):
    _, rows = case
    assert 1 << gf2.rank(rows) == len(span(rows))


@given(matrices)
def test_row_reduce_is_rref_of_same_space(case):
    w, rows = case
    rref, pivots = gf2.row_reduce(rows, w)
    assert span(rref) == span(rows)
    assert len(rref) == len(pivots) == gf2.rank(rows)
    assert pivots == sorted(pivots)
    for i, (r, c) in enumerate(zip(rref, pivots)):
        assert r & -r == 1 << c
        for k, other in enumerate(rref):
            assert k == i or not other >> c & 1


@given(matrices)
def test_transpose_involution_and_rank(case):
    w, rows = case
    t = gf2.transpose(rows, w)
    assert gf2.transpose(t, len(rows)) == list(rows)
    assert gf2.rank(t) == gf2.rank(rows)


def test_principal_submatrix_and_diagonal():
    # path 0-1-2 adjacency
    rows = [0b010, 0b101, 0b010]
    assert gf2.principal_submatrix(rows, 0b101) == [0, 0]
    assert not gf2.is_nonsingular(rows, 0b101)
    assert gf2.is_nonsingular(rows, 0b101, diag=0b101)
    assert gf2.is_nonsingular(rows, 0b011)
    assert gf2.is_nonsingular(rows, 0)


def test_identity_and_zero():
    assert gf2.rank([1, 2, 4, 8]) == 4
    assert gf2.rank([0, 0]) == 0
    assert gf2.rank([3, 5, 6]) == 2
