"""Pivot and LC orbits of graphs, labelled and up to isomorphism."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, Sequence

from .canon import CanonicalForm, canon_key, canonical_form
from .graph import Graph, bipartition, format_hex_rows, lc_rows, pivot_rows
from .spectral import BudgetError

MOVES = ("pivot", "lc")
UNIVERSES = ("all", "connected", "bipartite-connected", "bipartite-all")
MODES = ("labelled", "unlabelled")

# Desk-scale ceilings on n; pass ``budget`` to classify to override.
DEFAULT_BUDGETS = {
    ("unlabelled", "pivot"): 8,
    ("unlabelled", "lc"): 8,
    ("unlabelled", "bipartite"): 9,
    ("labelled", "pivot"): 6,
    ("labelled", "lc"): 6,
    ("labelled", "bipartite"): 7,
}

Rows = tuple[int, ...]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def edge_list(rows: Sequence[int]) -> list[tuple[int, int]]:
    return [(u, v) for u, r in enumerate(rows) for v in _bits(r >> (u + 1) << (u + 1))]


def moves(rows: Rows, move: str) -> Iterator[Rows]:
    if move == "pivot":
        for u, v in edge_list(rows):
            yield pivot_rows(rows, u, v, True)
    elif move == "lc":
        for i, r in enumerate(rows):
            if r & (r - 1):
                yield lc_rows(rows, i)
    else:
        raise ValueError(f"unknown move {move!r}")


def rows_connected(rows: Sequence[int]) -> bool:
    n = len(rows)
    if n <= 1:
        return True
    comp = frontier = 1
    while frontier:
        nxt = 0
        for x in _bits(frontier):
            nxt |= rows[x]
        frontier = nxt & ~comp
        comp |= frontier
    return comp == (1 << n) - 1


def rows_bipartition(rows: Sequence[int]) -> int | None:
    """Mask of one side of a 2-colouring (vertex 0 of each component on it), or None."""
    n = len(rows)
    side, seen = 0, 0
    for s in range(n):
        if seen >> s & 1:
            continue
        seen |= 1 << s
        side |= 1 << s
        frontier, colour = 1 << s, 1
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= rows[x]
            if colour and nxt & side or not colour and nxt & (seen & ~side):
                return None
            nxt &= ~seen
            seen |= nxt
            colour ^= 1
            if colour:
                side |= nxt
            frontier = nxt
    return side


def in_universe(rows: Sequence[int], universe: str) -> bool:
    if universe == "all":
        return True
    if universe == "connected":
        return rows_connected(rows)
    if universe == "bipartite-connected":
        return rows_connected(rows) and rows_bipartition(rows) is not None
    if universe == "bipartite-all":
        return rows_bipartition(rows) is not None
    raise ValueError(f"unknown universe {universe!r}")


def euler_transform(connected: Sequence[int]) -> list[int]:
    """Counts of multisets of connected objects; ``connected[k-1]`` is the count of size ``k``."""
    m = len(connected)
    a = [1] + [0] * m
    for k in range(1, m + 1):
        b = connected[k - 1]
        if not b:
            continue
        new = [0] * (m + 1)
        for total in range(m + 1):
            if not a[total]:
                continue
            j = 0
            while total + j * k <= m:
                new[total + j * k] += a[total] * comb(b + j - 1, j)
                j += 1
        a = new
    return a[1:]


# -- universes ------------------------------------------------------------------


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Rows, ...]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Built by extension: every graph minus its last vertex is a graph on n-1
    vertices, so joining a new vertex to every subset of every smaller
    representative reaches every class.
    """
    if n <= 0:
        return ((),)
    if n == 1:
        return ((0,),)
    seen = set()
    for rows in all_graphs(n - 1):
        for s in range(1 << (n - 1)):
            ext = tuple(r | ((s >> i & 1) << (n - 1)) for i, r in enumerate(rows)) + (s,)
            seen.add(canon_key(ext))
    return tuple(sorted(seen))


def labelled_graphs(n: int, universe: str = "all") -> Iterator[Rows]:
    if universe.startswith("bipartite"):
        yield from _labelled_bipartite(n, universe == "bipartite-connected")
        return
    pairs = list(combinations(range(n), 2))
    for m in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if m >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        t = tuple(rows)
        if universe == "all" or in_universe(t, universe):
            yield t


def _labelled_bipartite(n: int, connected: bool) -> Iterator[Rows]:
    seen = set()
    if n == 0:
        yield ()
        return
    for side in range(1, 1 << n, 2):
        a = list(_bits(side))
        b = [v for v in range(n) if not side >> v & 1]
        pairs = [(u, v) for u in a for v in b]
        for m in range(1 << len(pairs)):
            rows = [0] * n
            for k, (u, v) in enumerate(pairs):
                if m >> k & 1:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
            t = tuple(rows)
            if t in seen:
                continue
            seen.add(t)
            if not connected or rows_connected(t):
                yield t


# -- single orbits --------------------------------------------------------------


def labelled_closure(rows: Rows, move: str = "pivot") -> set[Rows]:
    seen = {rows}
    queue = deque([rows])
    while queue:
        for nxt in moves(queue.popleft(), move):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def unlabelled_closure(rows: Rows, move: str = "pivot") -> set[Rows]:
    """Canonical keys of every isomorphism class in the orbit of ``rows``."""
    start = canon_key(rows)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in moves(queue.popleft(), move):
            key = canon_key(nxt)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return seen


@dataclass(frozen=True)
class OrbitReport:
    move: str
    mode: str
    size: int
    unlabelled_size: int
    labelled_size: int
    representative: CanonicalForm
    min_edge_representative: CanonicalForm
    bipartite: bool
    partition_sizes: tuple[int, int] | None
    members: frozenset = field(repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "move": self.move,
            "mode": self.mode,
            "size": self.size,
            "unlabelled_size": self.unlabelled_size,
            "labelled_size": self.labelled_size,
            "representative": self.representative.hex,
            "min_edge_representative": self.min_edge_representative.hex,
            "bipartite": self.bipartite,
            "partition_sizes": list(self.partition_sizes) if self.partition_sizes else None,
        }


def _orbit(g: Graph, move: str, mode: str) -> OrbitReport:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    labelled = labelled_closure(g.rows, move)
    unlabelled = unlabelled_closure(g.rows, move)
    rep = min(unlabelled)
    min_edges = min(unlabelled, key=lambda r: (sum(x.bit_count() for x in r), r))
    bip = bipartition(g)
    sizes = None
    if bip is not None:
        sizes = tuple(sorted((len(bip[0]), len(bip[1])), reverse=True))
    return OrbitReport(
        move=move,
        mode=mode,
        size=len(labelled) if mode == "labelled" else len(unlabelled),
        unlabelled_size=len(unlabelled),
        labelled_size=len(labelled),
        representative=CanonicalForm(g.n, rep),
        min_edge_representative=CanonicalForm(g.n, min_edges),
        bipartite=bip is not None,
        partition_sizes=sizes,
        members=frozenset(labelled if mode == "labelled" else unlabelled),
    )


def pivot_orbit(g: Graph, mode: str = "unlabelled") -> OrbitReport:
    """BFS closure under pivot (swap convention) on every edge."""
    return _orbit(g, "pivot", mode)


def lc_orbit(g: Graph, mode: str = "unlabelled") -> OrbitReport:
    return _orbit(g, "lc", mode)


# -- classification -------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    n: int
    move: str
    universe: str
    mode: str
    count: int
    representatives: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "move": self.move,
            "universe": self.universe,
            "mode": self.mode,
            "count": self.count,
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _neighbour_keys(args: tuple[Rows, str]) -> list[Rows]:
    rows, move = args
    return [canon_key(nxt) for nxt in moves(rows, move)]


def parallel_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Order-preserving map; ``threads > 1`` uses a process pool."""
    if threads <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    with Pool(threads) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (threads * 8)))


def _budget_key(move: str, universe: str, mode: str) -> tuple[str, str]:
    if universe.startswith("bipartite") and move == "pivot":
        return (mode, "bipartite")
    return (mode, move)


def check_budget(n: int, move: str, universe: str, mode: str, budget: int | None = None) -> None:
    limit = DEFAULT_BUDGETS[_budget_key(move, universe, mode)] if budget is None else budget
    if n > limit:
        raise BudgetError(f"n={n} exceeds the {mode} {move}/{universe} budget n<={limit}")


def _classify_unlabelled_direct(n: int, move: str, universe: str, threads: int) -> list[Rows]:
    keys = [k for k in all_graphs(n) if in_universe(k, universe)]
    index = {k: i for i, k in enumerate(keys)}
    uf = _UnionFind(len(keys))
    for i, nbrs in enumerate(parallel_map(_neighbour_keys, [(k, move) for k in keys], threads)):
        for k in nbrs:
            uf.union(i, index[k])
    # keys are sorted, so each root is the least key of its orbit
    return [k for i, k in enumerate(keys) if uf.find(i) == i]


def extend_bipartite(reps: Iterable[Graph | Rows]) -> list[Graph]:
    """Every graph obtained by joining one new vertex to a nonempty subset of one side.

    A representative with sides of sizes a and b yields 2^a + 2^b - 2 graphs.
    """
    out = []
    for g in reps:
        rows = g.rows if isinstance(g, Graph) else tuple(g)
        n = len(rows)
        side = rows_bipartition(rows)
        if side is None or not rows_connected(rows):
            raise ValueError("extension needs a connected bipartite graph")
        for part in (side, ((1 << n) - 1) & ~side):
            sub = part
            while sub:
                ext = tuple(r | ((sub >> i & 1) << n) for i, r in enumerate(rows)) + (sub,)
                out.append(Graph(n + 1, ext))
                sub = (sub - 1) & part
    return out


@lru_cache(maxsize=None)
def bipartite_orbit_reps(n: int) -> tuple[Rows, ...]:
    """Least canonical key of each pivot orbit of connected bipartite graphs, by extension."""
    if n <= 1:
        return ((0,),) if n == 1 else ((),)
    candidates = sorted({canon_key(g.rows) for g in extend_bipartite(bipartite_orbit_reps(n - 1))})
    seen: set[Rows] = set()
    reps = []
    for key in candidates:
        if key in seen:
            continue
        orbit = unlabelled_closure(key, "pivot")
        seen |= orbit
        reps.append(min(orbit))
    return tuple(sorted(reps))


def _disjoint_union(parts: Sequence[Rows]) -> Rows:
    rows: list[int] = []
    for p in parts:
        off = len(rows)
        rows.extend(r << off for r in p)
    return tuple(rows)


def _multiset_unions(connected: Callable[[int], Sequence[Rows]], n: int) -> list[Rows]:
    """Least key of each orbit of disjoint unions, one orbit per multiset of connected orbits."""
    out = []

    def rec(remaining: int, max_item: tuple[int, int], chosen: list[Rows]) -> None:
        if remaining == 0:
            out.append(min(unlabelled_closure(_disjoint_union(chosen), "pivot")))
            return
        for size in range(min(remaining, max_item[0]), 0, -1):
            reps = connected(size)
            top = max_item[1] if size == max_item[0] else len(reps) - 1
            for idx in range(top, -1, -1):
                rec(remaining - size, (size, idx), chosen + [reps[idx]])

    rec(n, (n, len(connected(n)) - 1), [])
    return sorted(out)


def classify(
    n: int,
    move: str = "pivot",
    universe: str = "connected",
    mode: str = "unlabelled",
    threads: int = 1,
    method: str = "auto",
    budget: int | None = None,
) -> Classification:
    """Partition the universe into orbits; one representative (hex rows) per orbit.

    ``method`` picks the unlabelled strategy: ``direct`` classifies every
    isomorphism class, ``extension`` grows connected bipartite orbits from
    n-1 and assembles disconnected orbits as multisets of connected ones.
    """
    if move not in MOVES or universe not in UNIVERSES or mode not in MODES:
        raise ValueError(f"bad classify arguments {move!r} {universe!r} {mode!r}")
    if move == "lc" and universe.startswith("bipartite"):
        raise ValueError("local complementation does not preserve bipartiteness")
    if n < 1:
        raise ValueError("n must be positive")
    check_budget(n, move, universe, mode, budget)
    if mode == "labelled":
        reps = _classify_labelled(n, move, universe)
    else:
        if method == "auto":
            method = "extension" if universe.startswith("bipartite") else "direct"
        if method == "direct":
            reps = _classify_unlabelled_direct(n, move, universe, threads)
        elif method == "extension":
            if move != "pivot" or not universe.startswith("bipartite"):
                raise ValueError("the extension method applies to bipartite pivot orbits")
            if universe == "bipartite-connected":
                reps = list(bipartite_orbit_reps(n))
            else:
                reps = _multiset_unions(lambda k: bipartite_orbit_reps(k), n)
        else:
            raise ValueError(f"unknown method {method!r}")
    lines = tuple(sorted(format_hex_rows(r) for r in reps))
    return Classification(n, move, universe, mode, len(lines), lines)


def _classify_labelled(n: int, move: str, universe: str) -> list[Rows]:
    seen: set[Rows] = set()
    reps = []
    for rows in labelled_graphs(n, universe):
        if rows in seen:
            continue
        orbit = labelled_closure(rows, move)
        seen |= orbit
        reps.append(min(orbit))
    return reps


def resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("PIVOTLAB_THREADS")
    return max(1, int(env)) if env else 1


# -- representative database -----------------------------------------------------


def write_reps(path: str, lines: Iterable[str]) -> None:
    with open(path, "w") as fh:
        for line in sorted(lines):
            fh.write(line + "\n")


def read_reps(path: str) -> list[Graph]:
    from .graph import parse_hex_rows

    with open(path) as fh:
        return [parse_hex_rows(line) for line in fh if line.strip()]


def canonical_of(g: Graph) -> CanonicalForm:
    return canonical_form(g)
