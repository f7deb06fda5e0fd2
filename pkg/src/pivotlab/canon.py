"""Canonical labelling of small graphs (optionally vertex-coloured).

Partition refinement to an equitable ordered partition, then a search tree
that individualises vertices of the first smallest non-singleton cell.  The
canonical form is the least row tuple over the explored leaves.  Automorphisms
found at leaves prune sibling subtrees.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .graph import Graph, format_hex_rows


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _refine(rows: Sequence[int], cells: list[int], queue: list[int]) -> list[int]:
    """Refine ``cells`` (ordered bitmasks) until equitable w.r.t. every splitter in ``queue``."""
    cells = list(cells)
    while queue:
        w = queue.pop()
        k = 0
        while k < len(cells):
            c = cells[k]
            if c & (c - 1) == 0:
                k += 1
                continue
            groups: dict[int, int] = {}
            for v in _bits(c):
                d = (rows[v] & w).bit_count()
                groups[d] = groups.get(d, 0) | (1 << v)
            if len(groups) == 1:
                k += 1
                continue
            parts = [groups[d] for d in sorted(groups)]
            cells[k:k + 1] = parts
            queue.extend(parts)
            k += len(parts)
    return cells


def _encode(rows: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for k, v in enumerate(order):
        pos[v] = k
    out = []
    for v in order:
        acc = 0
        for w in _bits(rows[v]):
            acc |= 1 << pos[w]
        out.append(acc)
    return tuple(out)


def _initial_cells(n: int, colors: Sequence[int] | None) -> list[int]:
    if n == 0:
        return []
    if colors is None:
        return [(1 << n) - 1]
    by: dict[int, int] = {}
    for v, c in enumerate(colors):
        by[c] = by.get(c, 0) | (1 << v)
    return [by[c] for c in sorted(by)]


class _Search:
    def __init__(self, rows: Sequence[int], n: int):
        self.rows = rows
        self.n = n
        self.best: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.autos: list[list[int]] = []

    def leaf(self, cells: list[int]) -> None:
        order = [c.bit_length() - 1 for c in cells]
        code = _encode(self.rows, order)
        if self.best is None or code < self.best:
            self.best, self.best_order = code, order
        elif code == self.best:
            gamma = list(range(self.n))
            for a, b in zip(self.best_order, order):
                gamma[a] = b
            self.autos.append(gamma)

    def node(self, cells: list[int], fixed: list[int]) -> None:
        target = None
        for k, c in enumerate(cells):
            if c & (c - 1) and (target is None or c.bit_count() < cells[target].bit_count()):
                target = k
        if target is None:
            self.leaf(cells)
            return
        done: list[int] = []
        for v in _bits(cells[target]):
            if done and self._equivalent(v, done, fixed):
                continue
            done.append(v)
            single = 1 << v
            child = cells[:target] + [single, cells[target] ^ single] + cells[target + 1:]
            self.node(_refine(self.rows, child, [single]), fixed + [v])

    def _equivalent(self, v: int, done: list[int], fixed: list[int]) -> bool:
        gens = [g for g in self.autos if all(g[f] == f for f in fixed)]
        if not gens:
            return False
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for a, b in enumerate(g):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        rv = find(v)
        return any(find(d) == rv for d in done)


def canonical_rows(rows: Sequence[int], colors: Sequence[int] | None = None) -> tuple[tuple[int, ...], list[int]]:
    """Return (canonical rows, canonical order); ``order[k]`` is the old vertex placed at ``k``.

    With ``colors`` the colour classes stay in ascending colour order, so
    only colour-preserving relabellings are identified.
    """
    n = len(rows)
    cells = _initial_cells(n, colors)
    search = _Search(rows, n)
    search.node(_refine(rows, cells, list(cells)), [])
    return search.best if search.best is not None else (), search.best_order or []


def canon_key(rows: Sequence[int]) -> tuple[int, ...]:
    return canonical_rows(rows)[0]


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    rows: tuple[int, ...]
    color_sizes: tuple[int, ...] = ()

    @property
    def hex(self) -> str:
        return format_hex_rows(self.rows)

    @property
    def hex_rows(self) -> list[str]:
        return [format(r, "x") for r in self.rows]

    @property
    def certificate(self) -> str:
        text = self.hex + ("|" + ",".join(map(str, self.color_sizes)) if self.color_sizes else "")
        return hashlib.blake2b(text.encode(), digest_size=8).hexdigest()

    def graph(self) -> Graph:
        return Graph(self.n, self.rows)

    def __str__(self) -> str:
        return self.hex


def canonical_form(g: Graph | Sequence[int], colors: Sequence[int] | None = None) -> CanonicalForm:
    rows = g.rows if isinstance(g, Graph) else tuple(g)
    best, _ = canonical_rows(rows, colors)
    sizes: tuple[int, ...] = ()
    if colors is not None:
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        sizes = tuple(counts[c] for c in sorted(counts))
    return CanonicalForm(len(rows), best, sizes)


def brute_force_min(rows: Sequence[int]) -> tuple[int, ...]:
    """Least row tuple over all n! orderings (oracle, small n only)."""
    n = len(rows)
    return min(_encode(rows, order) for order in permutations(range(n))) if n else ()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)
