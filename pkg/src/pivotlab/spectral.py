"""Exact {I,H,N}^n spectra of Boolean functions and flat-spectrum counting.

Vectors hold Gaussian integers (separate int64 real/imaginary arrays) and a
deferred normalisation ``2^{-half_pow/2}``, so flatness is an exact integer test.
Index bit ``i`` of a vector position is variable ``x_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from .anf import BooleanFunction, DimensionError, Z4Function
from .gf2 import is_nonsingular
from .graph import Graph, components

FAMILIES = {"IH": "IH", "IHN": "IHN", "HN": "HN"}

# n above which direct evaluation refuses to run unless the caller raises the budget
DIRECT_LIMITS = {"IH": 14, "IHN": 9, "HN": 9}


class BudgetError(RuntimeError):
    pass


_UNITS = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=np.int64)


@dataclass(frozen=True)
class TransformSpec:
    """One kernel letter per variable: ``spec.kinds[k]`` acts on ``x_k``."""

    kinds: str

    def __post_init__(self):
        if set(self.kinds) - set("IHN"):
            raise ValueError(f"transform spec {self.kinds!r} may only use I, H, N")

    @classmethod
    def from_sets(cls, n: int, r_h=(), r_n=()) -> TransformSpec:
        kinds = ["I"] * n
        for k in r_h:
            kinds[k] = "H"
        for k in r_n:
            if kinds[k] != "I":
                raise ValueError("R_H and R_N must be disjoint")
            kinds[k] = "N"
        return cls("".join(kinds))

    @property
    def n(self) -> int:
        return len(self.kinds)

    def positions(self, kind: str) -> list[int]:
        return [k for k, c in enumerate(self.kinds) if c == kind]

    @property
    def r_i(self) -> list[int]:
        return self.positions("I")

    @property
    def r_h(self) -> list[int]:
        return self.positions("H")

    @property
    def r_n(self) -> list[int]:
        return self.positions("N")

    def __str__(self) -> str:
        return self.kinds


def family_specs(n: int, family: str) -> Iterator[TransformSpec]:
    letters = _letters(family)
    for combo in product(letters, repeat=n):
        yield TransformSpec("".join(combo))


def _letters(family: str) -> str:
    try:
        return FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected IH, IHN or HN") from None


class SpectralVector:
    """``(re + i*im) * 2^{-half_pow/2}``."""

    __slots__ = ("n", "re", "im", "half_pow")

    def __init__(self, n: int, re, im=None, half_pow: int = 0):
        self.n = n
        self.re = np.asarray(re, dtype=np.int64)
        self.im = np.zeros_like(self.re) if im is None else np.asarray(im, dtype=np.int64)
        if self.re.shape != (1 << n,) or self.im.shape != (1 << n,):
            raise DimensionError("spectral vector length is not 2^n")
        self.half_pow = half_pow

    def copy(self) -> SpectralVector:
        return SpectralVector(self.n, self.re.copy(), self.im.copy(), self.half_pow)

    def squared_magnitudes(self) -> np.ndarray:
        return self.re * self.re + self.im * self.im

    def norm2(self) -> int:
        """Unnormalised squared norm; the true norm is this times ``2^{-half_pow}``."""
        return int(self.squared_magnitudes().sum())

    def scaled_equal(self, other: SpectralVector) -> bool:
        """Exact equality of the normalised vectors."""
        if self.n != other.n:
            return False
        d = self.half_pow - other.half_pow
        a, b = (self, other) if d >= 0 else (other, self)
        d = abs(d)
        if d % 2:
            return False if (a.re.any() or a.im.any() or b.re.any() or b.im.any()) else True
        f = 1 << (d // 2)
        return bool(np.array_equal(a.re, b.re * f) and np.array_equal(a.im, b.im * f))

    def values(self) -> list[complex]:
        scale = 2.0 ** (-self.half_pow / 2)
        return [complex(r, i) * scale for r, i in zip(self.re.tolist(), self.im.tolist())]

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectralVector) and self.scaled_equal(other)

    def __repr__(self) -> str:
        amps = [complex(r, i) for r, i in zip(self.re.tolist(), self.im.tolist())]
        return f"SpectralVector(n={self.n}, half_pow={self.half_pow}, amps={amps})"


def bipolar(p: BooleanFunction) -> SpectralVector:
    return SpectralVector(p.n, 1 - 2 * p.truth_table().astype(np.int64))


def phase_vector(m: BooleanFunction, p: Z4Function) -> SpectralVector:
    """``[m(x)] i^{p(x)}``."""
    if m.n != p.n:
        raise DimensionError("n mismatch")
    units = _UNITS[p.table]
    mask = m.truth_table().astype(np.int64)
    return SpectralVector(m.n, units[:, 0] * mask, units[:, 1] * mask)


def _butterfly(re: np.ndarray, im: np.ndarray, i: int, kind: str) -> tuple[np.ndarray, np.ndarray]:
    rv = re.reshape(-1, 2, 1 << i)
    iv = im.reshape(-1, 2, 1 << i)
    ar, br = rv[:, 0, :], rv[:, 1, :]
    ai, bi = iv[:, 0, :], iv[:, 1, :]
    if kind == "H":
        out_r = np.stack([ar + br, ar - br], axis=1)
        out_i = np.stack([ai + bi, ai - bi], axis=1)
    elif kind == "N":
        # (a, b) -> (a + i b, a - i b)
        out_r = np.stack([ar - bi, ar + bi], axis=1)
        out_i = np.stack([ai + br, ai - br], axis=1)
    else:
        raise ValueError(f"kernel must be H or N, got {kind!r}")
    return out_r.reshape(-1), out_i.reshape(-1)


def apply_kernel(s: SpectralVector, i: int, kind: str) -> SpectralVector:
    if not 0 <= i < s.n:
        raise DimensionError(f"position {i} outside n={s.n}")
    re, im = _butterfly(s.re, s.im, i, kind)
    return SpectralVector(s.n, re, im, s.half_pow + 1)


def apply(s: SpectralVector, spec: TransformSpec | str) -> SpectralVector:
    spec = TransformSpec(spec) if isinstance(spec, str) else spec
    if spec.n != s.n:
        raise DimensionError("spec length differs from n")
    out = s
    for k, c in enumerate(spec.kinds):
        if c != "I":
            out = apply_kernel(out, k, c)
    return out


def is_flat(s: SpectralVector) -> bool:
    mag = s.squared_magnitudes()
    return bool((mag == mag[0]).all())


def _check_budget(n: int, family: str, max_n: int | None) -> None:
    limit = DIRECT_LIMITS[family] if max_n is None else max_n
    if n > limit:
        raise BudgetError(f"direct {family} sweep at n={n} exceeds budget n<={limit}")


def flat_specs(p: BooleanFunction, family: str = "IH", max_n: int | None = None) -> list[str]:
    """Every spec in the family whose transform of ``(-1)^p`` is flat, in lexicographic I<H<N order."""
    letters = _letters(family)
    _check_budget(p.n, family, max_n)
    n = p.n
    found: list[str] = []
    s = bipolar(p)

    def walk(k: int, re: np.ndarray, im: np.ndarray, prefix: str) -> None:
        if k == n:
            mag = re * re + im * im
            if (mag == mag[0]).all():
                found.append(prefix)
            return
        for c in letters:
            if c == "I":
                walk(k + 1, re, im, prefix + c)
            else:
                r2, i2 = _butterfly(re, im, k, c)
                walk(k + 1, r2, i2, prefix + c)

    walk(0, s.re, s.im, "")
    return found


def count_flat(p: BooleanFunction, family: str = "IH", max_n: int | None = None) -> int:
    return len(flat_specs(p, family, max_n))


def flat_h_sets(p: BooleanFunction, max_n: int | None = None) -> set[frozenset[int]]:
    """Sets X such that H on exactly the positions in X gives a flat spectrum."""
    return {frozenset(k for k, c in enumerate(spec) if c == "H") for spec in flat_specs(p, "IH", max_n)}


# -- rank criterion for quadratics ---------------------------------------------


def is_flat_quadratic(g: Graph, spec: TransformSpec | str) -> bool:
    """Flat iff the adjacency matrix, with 1s on the diagonal at N positions,
    is nonsingular over GF(2) on the rows/columns of the H and N positions."""
    spec = TransformSpec(spec) if isinstance(spec, str) else spec
    if spec.n != g.n:
        raise DimensionError("spec length differs from n")
    r_h = sum(1 << k for k in spec.r_h)
    r_n = sum(1 << k for k in spec.r_n)
    return is_nonsingular(g.rows, r_h | r_n, r_n)


def count_flat_quadratic(g: Graph, family: str = "IH") -> int:
    """Number of flat specs of the graph's quadratic, by counting nonsingular
    (modified) principal submatrices.

    Rather than one rank computation per spec, the count recurses on the lowest
    remaining vertex with GF(2) Schur complements (one elimination step per
    branch) and memoises on the remaining matrix, so highly structured graphs
    such as cliques stay cheap at n=20 and beyond.
    """
    letters = _letters(family)
    allow_skip = "I" in letters
    free_diag = "N" in letters  # an included vertex may take either diagonal value
    memo: dict = {}

    def count(rem: int, rows: tuple[int, ...], diag: int) -> int:
        if not rem:
            return 1
        key = (rem, tuple(rows[x] & rem for x in _iter(rem)), 0 if free_diag else diag & rem)
        hit = memo.get(key)
        if hit is not None:
            return hit
        low = rem & -rem
        v = low.bit_length() - 1
        rest = rem ^ low
        total = count(rest, rows, diag) if allow_skip else 0
        dv_options = (0, 1) if free_diag else ((diag >> v) & 1,)
        for dv in dv_options:
            if dv:
                nb = rows[v] & rest
                new = list(rows)
                for x in _iter(nb):
                    new[x] ^= nb & ~(1 << x)
                total += count(rest, tuple(new), diag ^ nb)
            else:
                cands = rows[v] & rest
                excluded = 0
                for w in _iter(cands):
                    rem2 = rest & ~(1 << w) & ~excluded
                    dw_options = (0, 1) if free_diag else ((diag >> w) & 1,)
                    for dw in dw_options:
                        total += count(rem2, *_pair_schur(rows, diag, v, w, dw, rem2))
                    if not allow_skip:
                        break
                    excluded |= 1 << w
        memo[key] = total
        return total

    return count((1 << g.n) - 1, g.rows, 0)


def _iter(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pair_schur(rows, diag, v, w, dw, rem) -> tuple[tuple[int, ...], int]:
    # block [[0,1],[1,dw]] has inverse [[dw,1],[1,0]]; M' = M + dw cv cv^T + cv cw^T + cw cv^T
    cv = rows[v] & rem
    cw = rows[w] & rem
    new = list(rows)
    nd = diag
    for x in _iter(rem):
        bx = 1 << x
        delta = 0
        if cv & bx:
            delta ^= cw
            if dw:
                delta ^= cv
        if cw & bx:
            delta ^= cv
        new[x] ^= delta & ~bx
        if delta & bx:
            nd ^= bx
    return tuple(new), nd


def count_flat_quadratic_by_rank(g: Graph, family: str = "IH") -> int:
    """One rank test per spec; the straightforward form of :func:`count_flat_quadratic`."""
    return sum(is_flat_quadratic(g, spec) for spec in family_specs(g.n, family))


# -- bounds ------------------------------------------------------------------


def component_bound(g: Graph, family: str = "IH") -> int:
    """Product of the per-component flat counts (a lower bound on the whole graph's count)."""
    out = 1
    for comp in components(g):
        out *= count_flat_quadratic(g.induced(comp), family)
    return out


def clique_upper_bound(k_ih: int) -> int:
    """``floor(log2 K_IH)``: the stated upper bound on clique size across a pivot orbit."""
    if k_ih < 1:
        raise ValueError("flat count is at least 1")
    return k_ih.bit_length() - 1


def family_bounds(n: int, t: int) -> tuple[int, int]:
    ih = (t + 1) * (1 << (n - t - 1))
    return ih, (n + 1) * ih


def family_flat_counts(n: int, t: int, h: BooleanFunction | None = None, ihn: bool = True) -> dict:
    from .anf import family_member

    f = family_member(n, t, h)
    ih_bound, ihn_bound = family_bounds(n, t)
    ih = count_flat(f, "IH")
    out = {"n": n, "t": t, "function": str(f), "ih_count": ih, "ih_bound": ih_bound,
           "ihn_count": None, "ihn_bound": ihn_bound}
    if ihn:
        out["ihn_count"] = count_flat(f, "IHN")
    return out
