"""Boolean functions in algebraic normal form, and Z4-valued phase functions.

A monomial is an int bitmask over the variables (bit ``i`` set means ``x_i``
occurs); the empty mask ``0`` is the constant term ``1``.  A
:class:`BooleanFunction` is a set of such masks, added over GF(2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

MAX_VARS = 31


class DimensionError(ValueError):
    """Operands live on different numbers of variables, or an index is out of range."""


class ANFParseError(ValueError):
    pass


def monomial(*variables: int) -> int:
    mask = 0
    for v in variables:
        if mask >> v & 1:
            raise ValueError(f"duplicate variable x{v} in monomial")
        mask |= 1 << v
    return mask


def monomial_vars(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_monomial(mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{i}" for i in monomial_vars(mask))


def _term_key(mask: int) -> tuple[int, list[int]]:
    return (mask.bit_count(), monomial_vars(mask))


def mobius(table: np.ndarray, n: int) -> np.ndarray:
    """Binary Moebius transform; maps ANF coefficients <-> truth table (it is an involution)."""
    out = np.array(table, dtype=np.uint8) & 1
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] ^= view[:, 0, :]
    return out


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    terms: frozenset[int]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise DimensionError(f"n={self.n} outside [0, {MAX_VARS}]")
        if not isinstance(self.terms, frozenset):
            object.__setattr__(self, "terms", frozenset(self.terms))
        limit = 1 << self.n
        for t in self.terms:
            if t < 0 or t >= limit:
                raise DimensionError(f"term {format_monomial(t)} outside n={self.n}")

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> BooleanFunction:
        return cls(n, frozenset())

    @classmethod
    def one(cls, n: int) -> BooleanFunction:
        return cls(n, frozenset({0}))

    @classmethod
    def var(cls, n: int, i: int) -> BooleanFunction:
        return cls(n, frozenset({1 << i}))

    @classmethod
    def from_terms(cls, n: int, terms: Iterable) -> BooleanFunction:
        """Build from monomials given as masks or iterables of variable indices; repeats cancel."""
        acc: set[int] = set()
        for t in terms:
            mask = t if isinstance(t, int) else monomial(*t)
            acc ^= {mask}
        return cls(n, frozenset(acc))

    @classmethod
    def from_truth_table(cls, table, n: int | None = None) -> BooleanFunction:
        table = np.asarray(table)
        if n is None:
            n = int(table.size).bit_length() - 1
        if table.size != 1 << n:
            raise DimensionError("truth table length is not 2^n")
        coeffs = mobius(table, n)
        return cls(n, frozenset(int(k) for k in np.flatnonzero(coeffs)))

    @classmethod
    def parse(cls, text: str) -> BooleanFunction:
        return parse_anf(text)

    # algebra --------------------------------------------------------------

    def _check(self, other: BooleanFunction) -> None:
        if self.n != other.n:
            raise DimensionError(f"n mismatch: {self.n} vs {other.n}")

    def __add__(self, other: BooleanFunction) -> BooleanFunction:
        self._check(other)
        return BooleanFunction(self.n, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: BooleanFunction) -> BooleanFunction:
        self._check(other)
        acc: set[int] = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {a | b}
        return BooleanFunction(self.n, frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_anf(self)

    def _index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise DimensionError(f"variable x{i} outside n={self.n}")

    def restrict(self, i: int, a: int) -> BooleanFunction:
        """``f|_{x_i=a}``, still a function on ``n`` variables (independent of ``x_i``)."""
        self._index(i)
        bit = 1 << i
        acc: set[int] = set()
        for t in self.terms:
            if t & bit:
                if a:
                    acc ^= {t & ~bit}
            else:
                acc ^= {t}
        return BooleanFunction(self.n, frozenset(acc))

    def neighbourhood(self, i: int) -> BooleanFunction:
        """All terms multiplying ``x_i``, with ``x_i`` removed."""
        self._index(i)
        bit = 1 << i
        return BooleanFunction(self.n, frozenset(t & ~bit for t in self.terms if t & bit))

    def contains_term(self, g: int) -> bool:
        return g in self.terms

    def is_multiplying_term(self, g: int) -> bool:
        return any(t & g == g for t in self.terms)

    def depends_on(self, i: int) -> bool:
        bit = 1 << i
        return any(t & bit for t in self.terms)

    def support(self) -> int:
        mask = 0
        for t in self.terms:
            mask |= t
        return mask

    @property
    def degree(self) -> int:
        return max((t.bit_count() for t in self.terms), default=0)

    def strip_affine(self) -> BooleanFunction:
        return BooleanFunction(self.n, frozenset(t for t in self.terms if t.bit_count() > 1))

    def is_affine(self) -> bool:
        return self.degree <= 1

    # evaluation -----------------------------------------------------------

    def __call__(self, x: int) -> int:
        return sum(1 for t in self.terms if t & x == t) & 1

    def truth_table(self) -> np.ndarray:
        coeffs = np.zeros(1 << self.n, dtype=np.uint8)
        if self.terms:
            coeffs[list(self.terms)] = 1
        return mobius(coeffs, self.n)

    def sorted_terms(self) -> list[int]:
        return sorted(self.terms, key=_term_key)


def format_anf(f: BooleanFunction) -> str:
    body = "+".join(format_monomial(t) for t in f.sorted_terms()) or "0"
    return f"n={f.n}; {body}"


_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*;(.*)$", re.S)
_VAR = re.compile(r"^x(\d+)$")


def parse_anf(text: str) -> BooleanFunction:
    """Parse ``n=<int>; x0*x1+x2+1``.  Repeated terms cancel; ``0`` is the zero function."""
    m = _HEADER.match(text)
    if not m:
        raise ANFParseError(f"missing 'n=<int>;' header in {text!r}")
    n = int(m.group(1))
    body = re.sub(r"\s+", "", m.group(2))
    acc: set[int] = set()
    if body not in ("", "0"):
        for term in body.split("+"):
            if term == "1":
                acc ^= {0}
                continue
            mask = 0
            for factor in term.split("*"):
                vm = _VAR.match(factor)
                if not vm:
                    raise ANFParseError(f"bad factor {factor!r} in term {term!r}")
                v = int(vm.group(1))
                if v >= n:
                    raise ANFParseError(f"x{v} outside n={n}")
                if mask >> v & 1:
                    raise ANFParseError(f"duplicate variable x{v} in term {term!r}")
                mask |= 1 << v
            acc ^= {mask}
    return BooleanFunction(n, frozenset(acc))


class Z4Function:
    """A map GF(2)^n -> Z4 held as a dense table, index bit ``i`` = ``x_i``."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table):
        table = np.asarray(table, dtype=np.int64) % 4
        if table.shape != (1 << n,):
            raise DimensionError("Z4 table length is not 2^n")
        table.flags.writeable = False
        self.n = n
        self.table = table

    @classmethod
    def lift(cls, f: BooleanFunction, coeff: int = 2) -> Z4Function:
        """``coeff * [f]`` in Z4; ``lift(p)`` is the usual ``q = 2p``."""
        return cls(f.n, coeff * f.truth_table().astype(np.int64))

    @classmethod
    def combination(cls, n: int, parts: Iterable[tuple[int, BooleanFunction]], const: int = 0) -> Z4Function:
        """``const + sum(c * [f])`` mod 4, each Boolean ``f`` reduced over GF(2) before embedding."""
        acc = np.full(1 << n, const, dtype=np.int64)
        for c, f in parts:
            if f.n != n:
                raise DimensionError("n mismatch in Z4 combination")
            acc += c * f.truth_table().astype(np.int64)
        return cls(n, acc)

    def __add__(self, other: Z4Function) -> Z4Function:
        if self.n != other.n:
            raise DimensionError("n mismatch")
        return Z4Function(self.n, self.table + other.table)

    def __eq__(self, other) -> bool:
        return isinstance(other, Z4Function) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def restrict(self, j: int, a: int) -> Z4Function:
        view = self.table.reshape(-1, 2, 1 << j)
        half = view[:, a, :]
        return Z4Function(self.n, np.stack([half, half], axis=1).reshape(-1))

    def __repr__(self) -> str:
        return f"Z4Function(n={self.n}, table={self.table.tolist()})"


def family_member(n: int, t: int, h: BooleanFunction | None = None, a: BooleanFunction | None = None) -> BooleanFunction:
    """Complete bipartite K_{t,n-t} joined with a clique on the last ``n-t`` vertices, plus ``h`` and affine ``a``.

    ``h`` may only involve ``x_0..x_{t-1}``.
    """
    if not 0 <= t <= n - 1:
        raise ValueError(f"need 0 <= t <= n-1, got t={t}, n={n}")
    h = h if h is not None else BooleanFunction.zero(n)
    a = a if a is not None else BooleanFunction.zero(n)
    if h.n != n or a.n != n:
        raise DimensionError("h and a must be functions on n variables")
    if h.support() >> t:
        raise ValueError("h may only depend on the first t variables")
    if a.degree > 1:
        raise ValueError("a must be affine")
    terms: set[int] = set()
    for i in range(t):
        for j in range(t, n):
            terms.add((1 << i) | (1 << j))
    for i in range(t, n - 1):
        for j in range(i + 1, n):
            terms.add((1 << i) | (1 << j))
    return BooleanFunction(n, frozenset(terms)) + h + a
