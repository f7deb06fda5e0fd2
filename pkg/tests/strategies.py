import hypothesis.strategies as st

from pivotlab.anf import BooleanFunction
from pivotlab.graph import Graph


@st.composite
def functions(draw, min_n=1, max_n=6, max_deg=None):
    n = draw(st.integers(min_n, max_n))
    limit = 1 << n
    pool = [m for m in range(limit) if max_deg is None or m.bit_count() <= max_deg]
    terms = draw(st.frozensets(st.sampled_from(pool), max_size=12))
    return BooleanFunction(n, terms)


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picked = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, picked) if keep])


@st.composite
def graphs_with_edge(draw, min_n=2, max_n=7):
    g = draw(graphs(min_n, max_n).filter(lambda g: g.num_edges() > 0))
    u, v = draw(st.sampled_from(g.edges()))
    return g, u, v


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))
