"""Simple graphs as bit rows, with local complementation, pivot and hypergraph pivot."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .anf import MAX_VARS, BooleanFunction, DimensionError


class NotAnEdgeError(ValueError):
    pass


class InadmissibleEdgeError(ValueError):
    """The pair is not a degree-2 term, or a higher-degree term also contains both vertices."""


class GraphFormatError(ValueError):
    pass


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise DimensionError(f"n={self.n} outside [0, {MAX_VARS}]")
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n:
            raise DimensionError("need exactly n rows")
        full = (1 << self.n) - 1
        for i, r in enumerate(rows):
            if r & ~full or r >> i & 1:
                raise GraphFormatError(f"row {i} has out-of-range bits or a loop")
            for j in _bits(r):
                if not rows[j] >> i & 1:
                    raise GraphFormatError(f"adjacency not symmetric at ({i},{j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphFormatError("loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def from_function(cls, f: BooleanFunction) -> Graph:
        """Graph of the quadratic part of ``f``; affine terms are ignored."""
        if f.degree > 2:
            raise ValueError("function has terms of degree > 2; it is a hypergraph")
        rows = [0] * f.n
        for t in f.terms:
            if t.bit_count() == 2:
                u, v = _bits(t)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return cls(f.n, tuple(rows))

    def to_function(self) -> BooleanFunction:
        return BooleanFunction(self.n, frozenset((1 << u) | (1 << v) for u, v in self.edges()))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Vertex ``v`` becomes ``perm[v]``."""
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            acc = 0
            for w in _bits(r):
                acc |= 1 << perm[w]
            rows[perm[v]] = acc
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Iterable[int]) -> Graph:
        vs = sorted(vertices)
        index = {v: k for k, v in enumerate(vs)}
        rows = []
        for v in vs:
            acc = 0
            for w in _bits(self.rows[v]):
                if w in index:
                    acc |= 1 << index[w]
            rows.append(acc)
        return Graph(len(vs), tuple(rows))

    def __str__(self) -> str:
        return format_graph(self)


# -- raw row kernels (hot paths share these with the orbit enumerator) ------


def lc_rows(rows: Sequence[int], i: int) -> tuple[int, ...]:
    out = list(rows)
    nb = rows[i]
    for x in _bits(nb):
        out[x] ^= nb & ~(1 << x)
    return tuple(out)


def pivot_rows(rows: Sequence[int], u: int, v: int, swap: bool = True) -> tuple[int, ...]:
    out = list(rows)
    ends = (1 << u) | (1 << v)
    nu = rows[u] & ~ends
    nv = rows[v] & ~ends
    a = nu & ~nv
    b = nv & ~nu
    c = nu & nv
    for x in _bits(a):
        out[x] ^= b | c
    for x in _bits(b):
        out[x] ^= a | c
    for x in _bits(c):
        out[x] ^= a | b
    if swap:
        out[u], out[v] = out[v], out[u]
        bu, bv = 1 << u, 1 << v
        for k, r in enumerate(out):
            hu, hv = r & bu, r & bv
            if bool(hu) != bool(hv):
                out[k] = r ^ ends
    return tuple(out)


def local_complement(g: Graph, i: int) -> Graph:
    if not 0 <= i < g.n:
        raise DimensionError(f"vertex {i} outside n={g.n}")
    return Graph(g.n, lc_rows(g.rows, i))


def pivot(g: Graph, u: int, v: int, swap: bool = True) -> Graph:
    """Pivot (edge-local complementation) on ``uv``.

    With ``swap`` the labels of ``u`` and ``v`` are exchanged afterwards, which
    makes the result equal to LC(u) LC(v) LC(u).
    """
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise DimensionError("vertex out of range")
    if not g.has_edge(u, v):
        raise NotAnEdgeError(f"{u}{v} is not an edge")
    return Graph(g.n, pivot_rows(g.rows, u, v, swap))


def is_admissible(p: BooleanFunction, u: int, v: int) -> bool:
    e = (1 << u) | (1 << v)
    if u == v or e not in p.terms:
        return False
    return not any(t & e == e for t in p.terms if t != e)


def admissible_edges(p: BooleanFunction) -> list[tuple[int, int]]:
    return [tuple(sorted(_bits(t))) for t in p.sorted_terms() if t.bit_count() == 2 and is_admissible(p, *_bits(t))]


def hyper_pivot(p: BooleanFunction, u: int, v: int, strip: bool = True) -> BooleanFunction:
    """``p + (x_u + x_v)(N_u + N_v) + N_u N_v`` on an admissible edge ``uv``.

    ``N_u``, ``N_v`` exclude the edge itself.  With ``strip`` the affine part of
    the result is dropped, giving the hypergraph.
    """
    if not is_admissible(p, u, v):
        raise InadmissibleEdgeError(f"x{u}x{v} is not an admissible pivot edge")
    n = p.n
    xu, xv = BooleanFunction.var(n, u), BooleanFunction.var(n, v)
    nu = p.neighbourhood(u) + xv
    nv = p.neighbourhood(v) + xu
    out = p + (xu + xv) * (nu + nv) + nu * nv
    return out.strip_affine() if strip else out


def hyperedges(p: BooleanFunction) -> list[tuple[int, ...]]:
    return [tuple(_bits(t)) for t in p.strip_affine().sorted_terms()]


# -- structure ----------------------------------------------------------------


def components(g: Graph) -> list[list[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= g.rows[x]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """BFS 2-colouring; each component's smallest vertex goes to the first side."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in _bits(g.rows[x]):
                if colour[y] < 0:
                    colour[y] = colour[x] ^ 1
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None
    return [v for v in range(g.n) if colour[v] == 0], [v for v in range(g.n) if colour[v] == 1]


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def max_clique_size(g: Graph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & g.rows[x])

    expand(0, (1 << g.n) - 1)
    return best


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.has_edge(a, b) for a, b in combinations(vs, 2))


def clique_split_sets(g: Graph, clique: Iterable[int], u: int, v: int) -> list[frozenset[int]]:
    """Vertex sets expected to be cliques after ``pivot(g, u, v, swap=True)``.

    Both endpoints inside the clique, or both outside it: the clique itself.
    One endpoint inside: ``C_{r-m}`` (the clique minus the endpoint and its
    ``m`` common neighbours, plus the outside endpoint) and ``C_{m+2}`` (the
    common neighbours plus both endpoints).
    """
    cl = frozenset(clique)
    if not is_clique(g, cl):
        raise ValueError("vertex set is not a clique")
    if not g.has_edge(u, v):
        raise NotAnEdgeError(f"{u}{v} is not an edge")
    if (u in cl) == (v in cl):
        return [cl]
    a, b = (u, v) if u in cl else (v, u)
    common = frozenset(x for x in cl if x != a and g.has_edge(x, b))
    return [frozenset(cl - {a} - common) | {b}, common | {a, b}]


def clique_split_predict(g: Graph, clique: Iterable[int], u: int, v: int) -> list[int]:
    return sorted(len(s) for s in clique_split_sets(g, clique, u, v))


# -- text formats ---------------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"n={g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Edge-list format (``n=<int>`` then ``u v`` lines) or the hex row format ``n:r0,r1,...``."""
    stripped = text.strip()
    if not stripped:
        raise GraphFormatError("empty graph text")
    first = stripped.splitlines()[0].strip()
    if ":" in first and not first.startswith("n="):
        return parse_hex_rows(first)
    if not first.startswith("n="):
        raise GraphFormatError("first line must be n=<int>")
    n = int(first[2:])
    edges = []
    for line in stripped.splitlines()[1:]:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {u} {v} outside n={n}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_hex_rows(rows: Sequence[int]) -> str:
    return f"{len(rows)}:" + ",".join(format(r, "x") for r in rows)


def parse_hex_rows(line: str) -> Graph:
    head, _, body = line.strip().partition(":")
    n = int(head)
    rows = tuple(int(h, 16) for h in body.split(",")) if n else ()
    return Graph(n, rows)
