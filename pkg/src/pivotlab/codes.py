"""Binary linear codes and their bipartite graphs.

Generator rows are int bitsets (bit j = coordinate j).  A code in standard
form (I | P) corresponds to the bipartite graph with blocks ((0, P), (P^T, 0));
graphs here are labelled by coordinates, with the information set as one side.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import gf2
from .canon import canonical_rows
from .graph import Graph, pivot_rows
from .orbits import (
    DEFAULT_BUDGETS,
    Rows,
    bipartite_orbit_reps,
    edge_list,
    euler_transform,
    rows_bipartition,
    rows_connected,
)
from .spectral import BudgetError


class RankError(ValueError):
    """Generator rows are linearly dependent."""


class CodeFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LinearCode:
    n: int
    k: int
    gen: tuple[int, ...]

    def __post_init__(self):
        gen = tuple(self.gen)
        object.__setattr__(self, "gen", gen)
        if len(gen) != self.k:
            raise RankError(f"expected {self.k} generator rows, got {len(gen)}")
        if any(r >> self.n for r in gen):
            raise CodeFormatError("generator row wider than n")
        if gf2.rank(gen) != self.k:
            raise RankError("generator rows are not linearly independent")

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> LinearCode:
        rows = [r.strip() for r in rows if r.strip()]
        if not rows:
            raise CodeFormatError("no generator rows")
        n = len(rows[0])
        if any(len(r) != n or set(r) - {"0", "1"} for r in rows):
            raise CodeFormatError("rows must be equal-length 0/1 strings")
        return cls(n, len(rows), tuple(sum(1 << j for j, ch in enumerate(r) if ch == "1") for r in rows))

    def rref(self) -> tuple[int, ...]:
        return tuple(gf2.row_reduce(self.gen, self.n)[0])

    def __eq__(self, other) -> bool:
        """Same subspace (not merely equivalent)."""
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.rref() == other.rref()

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.rref()))

    def permute(self, perm: Sequence[int]) -> LinearCode:
        """Coordinate ``j`` moves to ``perm[j]``."""
        out = []
        for r in self.gen:
            acc = 0
            for j in range(self.n):
                if r >> j & 1:
                    acc |= 1 << perm[j]
            out.append(acc)
        return LinearCode(self.n, self.k, tuple(out))

    def row_strings(self) -> list[str]:
        return ["".join("1" if r >> j & 1 else "0" for j in range(self.n)) for r in self.gen]

    def __str__(self) -> str:
        return format_code(self)


def format_code(c: LinearCode) -> str:
    return "\n".join([f"{c.n} {c.k}"] + c.row_strings()) + "\n"


def parse_code(text: str) -> LinearCode:
    lines = [ln.split("#", 1)[0].strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CodeFormatError("empty code file")
    try:
        n, k = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise CodeFormatError("first line must be 'n k'") from exc
    rows = lines[1:]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise CodeFormatError(f"expected {k} rows of length {n}")
    if k == 0:
        return LinearCode(n, 0, ())
    return LinearCode.from_strings(rows)


@dataclass(frozen=True)
class StandardForm:
    """``P[i]`` bit j is the entry in row i, column k+j.  Position q of (I|P) holds
    original coordinate ``perm[q]``."""

    k: int
    n: int
    P: tuple[int, ...]
    perm: tuple[int, ...]

    def generator(self) -> tuple[int, ...]:
        return tuple((1 << i) | (p << self.k) for i, p in enumerate(self.P))

    def code(self) -> LinearCode:
        """The code generated by (I | P), in permuted coordinates."""
        return LinearCode(self.n, self.k, self.generator())

    def info_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.perm[: self.k]))


def standard_form(c: LinearCode) -> StandardForm:
    rref, pivots = gf2.row_reduce(c.gen, c.n)
    if len(pivots) != c.k:
        raise RankError("generator is rank-deficient")
    rest = [j for j in range(c.n) if j not in pivots]
    perm = tuple(pivots + rest)
    P = []
    for r in rref:
        acc = 0
        for q, j in enumerate(rest):
            if r >> j & 1:
                acc |= 1 << q
        P.append(acc)
    return StandardForm(c.k, c.n, tuple(P), perm)


def dual(c: LinearCode) -> LinearCode:
    sf = standard_form(c)
    m = c.n - c.k
    # (P^T | I) in permuted positions, mapped back to coordinates
    rows = []
    for j in range(m):
        acc = 1 << sf.perm[c.k + j]
        for i in range(c.k):
            if sf.P[i] >> j & 1:
                acc |= 1 << sf.perm[i]
        rows.append(acc)
    return LinearCode(c.n, m, tuple(rows))


def code_graph(c: LinearCode) -> tuple[Graph, int]:
    """(coordinate-labelled graph, information-side mask)."""
    sf = standard_form(c)
    rows = [0] * c.n
    for i, p in enumerate(sf.P):
        a = sf.perm[i]
        for j in range(c.n - c.k):
            if p >> j & 1:
                b = sf.perm[c.k + j]
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    side = sum(1 << sf.perm[i] for i in range(c.k))
    return Graph(c.n, tuple(rows)), side


def graph_from_code(c: LinearCode) -> Graph:
    return code_graph(c)[0]


def code_from_graph(g: Graph, partition: Sequence[int]) -> LinearCode:
    """Code whose information set is ``partition`` (one side of the bipartition)."""
    side = 0
    for v in partition:
        side |= 1 << v
    for v in partition:
        if g.rows[v] & side:
            raise ValueError("graph is not bipartite with the given side")
    if rows_bipartition(g.rows) is None:
        raise ValueError("graph is not bipartite")
    gen = tuple((1 << v) | g.rows[v] for v in sorted(partition))
    return LinearCode(g.n, len(gen), gen)


def p_graph(P: Sequence[int], k: int, m: int) -> Graph:
    """Graph of (I | P): vertices 0..k-1 information, k..k+m-1 the rest."""
    rows = [0] * (k + m)
    for i, p in enumerate(P):
        for j in range(m):
            if p >> j & 1:
                rows[i] |= 1 << (k + j)
                rows[k + j] |= 1 << i
    return Graph(k + m, tuple(rows))


def p_block(g: Graph, k: int) -> tuple[int, ...]:
    return tuple(r >> k for r in g.rows[:k])


def pivot_P(P: Sequence[int], u: int, v: int, k: int | None = None) -> tuple[int, ...]:
    """Three-step pivot on the P block.

    ``u`` is a row index, ``v`` a vertex index (column ``v - k``).  Store the
    column, add row ``u`` to every other row with a one in it, restore the
    column.  The result is the P block of the pivot with ``u`` and ``v``
    swapped back.
    """
    k = len(P) if k is None else k
    col = v - k
    if not (0 <= u < k and col >= 0):
        raise ValueError("u must be a row and v a column vertex")
    if not P[u] >> col & 1:
        raise ValueError(f"P[{u}][{col}] = 0: not an edge")
    bit = 1 << col
    stored = [r & bit for r in P]
    out = [r ^ P[u] if r & bit and i != u else r for i, r in enumerate(P)]
    return tuple((r & ~bit) | s for r, s in zip(out, stored))


def restandardize_after_swap(P: Sequence[int], k: int, m: int, u: int, v: int) -> tuple[int, ...]:
    """Interchange coordinates u and v of (I | P), then row-reduce back to (I | P')."""
    n = k + m
    gen = [(1 << i) | (p << k) for i, p in enumerate(P)]
    swapped = []
    for r in gen:
        bu, bv = r >> u & 1, r >> v & 1
        swapped.append(r & ~((1 << u) | (1 << v)) | (bu << v) | (bv << u))
    rref, pivots = gf2.row_reduce(swapped, n)
    if pivots != list(range(k)):
        raise RankError("first k coordinates are not an information set after the swap")
    return tuple(r >> k for r in rref)


# -- equivalence and orbits of coloured graphs -------------------------------------


def colored_key(rows: Rows, side: int) -> tuple[Rows, int]:
    """Canonical (rows, side) with the side vertices ordered first."""
    colors = [0 if side >> v & 1 else 1 for v in range(len(rows))]
    best, _ = canonical_rows(rows, colors)
    return best, (1 << side.bit_count()) - 1


def colored_orbit(rows: Rows, side: int) -> set[tuple[Rows, int]]:
    """Canonical (graph, information side) pairs reachable by pivots; one per equivalent code."""
    start = colored_key(rows, side)
    seen = {start}
    queue = deque([start])
    while queue:
        r, s = queue.popleft()
        for u, v in edge_list(r):
            nxt = colored_key(pivot_rows(r, u, v, True), s ^ (1 << u) ^ (1 << v))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def canonical_code_key(c: LinearCode) -> tuple[Rows, int]:
    g, side = code_graph(c)
    return min(colored_orbit(g.rows, side))


def equivalent(c1: LinearCode, c2: LinearCode) -> bool:
    """Equal up to a coordinate permutation."""
    if c1.n != c2.n or c1.k != c2.k:
        return False
    g2, s2 = code_graph(c2)
    g1, s1 = code_graph(c1)
    return colored_key(g2.rows, s2) in colored_orbit(g1.rows, s1)


def is_isodual(c: LinearCode) -> bool:
    return 2 * c.k == c.n and equivalent(c, dual(c))


# -- information sets ----------------------------------------------------------------


def information_set_count(c: LinearCode) -> int:
    """Size of the labelled pivot orbit of (code graph, information side)."""
    g, side = code_graph(c)
    start = (g.rows, side)
    seen = {start}
    queue = deque([start])
    while queue:
        r, s = queue.popleft()
        for u, v in edge_list(r):
            nxt = (pivot_rows(r, u, v, True), s ^ (1 << u) ^ (1 << v))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


def information_sets_brute_force(c: LinearCode) -> int:
    cols = gf2.transpose(c.gen, c.n)
    return sum(1 for sub in combinations(cols, c.k) if gf2.rank(sub) == c.k)


# -- classification ---------------------------------------------------------------------


@dataclass(frozen=True)
class CodeClassification:
    n: int
    indecomposable: int
    isodual: int
    per_k: dict
    codes: tuple[LinearCode, ...]
    orbits: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "orbits": self.orbits,
            "indecomposable": self.indecomposable,
            "isodual": self.isodual,
            "per_k": {str(k): v for k, v in sorted(self.per_k.items())},
        }


def classify_codes(n: int, budget: int | None = None) -> CodeClassification:
    """Indecomposable codes of length n from pivot orbits of connected bipartite graphs.

    Each orbit gives two codes (either side as information set) unless the
    two coloured orbits coincide, which makes the code isodual.  For n = 1
    the k = 0 side is not counted as a code.
    """
    limit = DEFAULT_BUDGETS[("unlabelled", "bipartite")] if budget is None else budget
    if n > limit:
        raise BudgetError(f"n={n} exceeds the code classification budget n<={limit}")
    if n < 1:
        raise ValueError("n must be positive")
    reps = bipartite_orbit_reps(n)
    codes = []
    per_k: dict[int, int] = {}
    iso = 0
    full = (1 << n) - 1
    for rows in reps:
        side = rows_bipartition(rows)
        other = full & ~side
        sides = [s for s in (side, other) if s]
        if len(sides) == 2 and side.bit_count() == other.bit_count():
            if colored_key(rows, other) in colored_orbit(rows, side):
                iso += 1
                sides = [side]
        for s in sides:
            c = code_from_graph(Graph(n, rows), [v for v in range(n) if s >> v & 1])
            codes.append(c)
            per_k[c.k] = per_k.get(c.k, 0) + 1
    return CodeClassification(n, len(codes), iso, per_k, tuple(codes), len(reps))


def total_code_counts(indecomposable: Sequence[int]) -> list[int]:
    """Counts of all codes of length 1..m (every dimension, zero code included).

    Length-1 indecomposables are the [1,1] and [1,0] codes, so the first
    entry is raised to 2 before the multiset convolution.
    """
    seq = list(indecomposable)
    if seq:
        seq[0] = 2
    return euler_transform(seq)


def is_indecomposable(c: LinearCode) -> bool:
    g, _ = code_graph(c)
    return rows_connected(g.rows) and c.k > 0
