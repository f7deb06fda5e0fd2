"""Pointwise verification of the H / N transform identities behind pivot and LC.

Every check builds both sides exactly: the transform side by Gaussian-integer
butterflies, the closed-form side by evaluating ANF expressions on all inputs.
Scalars that leave Z[i] (``sqrt 2``, ``e^{i pi/4}``) are handled in Q(zeta_8).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .anf import BooleanFunction, DimensionError, Z4Function
from .graph import InadmissibleEdgeError, hyper_pivot, is_admissible
from .spectral import SpectralVector, _butterfly, bipolar, phase_vector


class Cyclo8:
    """Element ``c0 + c1 z + c2 z^2 + c3 z^3`` of Q(z), ``z = e^{i pi/4}``, ``z^4 = -1``."""

    __slots__ = ("c",)

    def __init__(self, *coeffs):
        c = [Fraction(x) for x in coeffs] + [Fraction(0)] * (4 - len(coeffs))
        self.c = tuple(c)

    @classmethod
    def zeta(cls, k: int = 1) -> Cyclo8:
        k %= 8
        sign = -1 if k >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[k % 4] = sign
        return cls(*coeffs)

    @classmethod
    def gaussian(cls, re: int, im: int = 0) -> Cyclo8:
        return cls(re, 0, im, 0)

    def __add__(self, other):
        other = _lift(other)
        return Cyclo8(*(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo8(*(-a for a in self.c))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __mul__(self, other):
        other = _lift(other)
        out = [Fraction(0)] * 4
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                k = i + j
                if k >= 4:
                    out[k - 4] -= a * b
                else:
                    out[k] += a * b
        return Cyclo8(*out)

    __rmul__ = __mul__

    def conjugate_k(self, k: int) -> Cyclo8:
        """Galois image under ``z -> z^k`` (k odd)."""
        acc = Cyclo8()
        for i, a in enumerate(self.c):
            if a:
                acc = acc + Cyclo8.zeta(i * k) * a
        return acc

    def inverse(self) -> Cyclo8:
        num = self.conjugate_k(3) * self.conjugate_k(5) * self.conjugate_k(7)
        norm = (self * num).c
        if norm[1] or norm[2] or norm[3] or not norm[0]:
            raise ZeroDivisionError("not invertible")
        return num * Cyclo8(1 / norm[0])

    def __truediv__(self, other):
        return self * _lift(other).inverse()

    def as_gaussian(self) -> tuple[int, int] | None:
        c0, c1, c2, c3 = self.c
        if c1 or c3 or c0.denominator != 1 or c2.denominator != 1:
            return None
        return int(c0), int(c2)

    def __eq__(self, other):
        try:
            return self.c == _lift(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Cyclo8{tuple(str(x) for x in self.c)}"


def _lift(x) -> Cyclo8:
    if isinstance(x, Cyclo8):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo8(x)
    raise TypeError(f"cannot lift {type(x).__name__} into Q(zeta_8)")


ZETA = Cyclo8.zeta(1)
I_UNIT = Cyclo8.zeta(2)
SQRT2 = ZETA - Cyclo8.zeta(3)
INV_SQRT2 = SQRT2 * Fraction(1, 2)


def mat_mul(a, b):
    return [[a[r][0] * b[0][c] + a[r][1] * b[1][c] for c in range(2)] for r in range(2)]


def mat_scale(s, a):
    return [[s * a[r][c] for c in range(2)] for r in range(2)]


def _m(rows) -> list[list[Cyclo8]]:
    return [[_lift(x) if not isinstance(x, Cyclo8) else x for x in row] for row in rows]


MAT_I = _m([[1, 0], [0, 1]])
MAT_H = mat_scale(INV_SQRT2, _m([[1, 1], [1, -1]]))
MAT_N = mat_scale(INV_SQRT2, _m([[1, I_UNIT], [1, -I_UNIT]]))
MAT_D = _m([[1, 0], [0, I_UNIT]])
MAT_D_INV = _m([[1, 0], [0, -I_UNIT]])
MAT_D_PRIME = _m([[0, -1], [1, 0]])

_LOCAL = {"d": MAT_D, "dinv": MAT_D_INV, "dprime": MAT_D_PRIME}


@dataclass
class DiagonalOp:
    """Tensor product of diagonal / anti-diagonal 2x2 unitaries times a global scalar."""

    n: int
    local: dict[int, str] = field(default_factory=dict)
    scalar: Cyclo8 = field(default_factory=lambda: Cyclo8(1))

    def __post_init__(self):
        for k, kind in self.local.items():
            if kind not in _LOCAL:
                raise ValueError(f"unknown local operator {kind!r}")
            if not 0 <= k < self.n:
                raise DimensionError(f"position {k} outside n={self.n}")

    def apply_local(self, re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Apply the per-position factors only (exact in Z[i]); the scalar is tracked separately."""
        for k, kind in sorted(self.local.items()):
            rv = re.reshape(-1, 2, 1 << k).copy()
            iv = im.reshape(-1, 2, 1 << k).copy()
            if kind == "d":  # second half times i
                rv[:, 1, :], iv[:, 1, :] = -iv[:, 1, :], rv[:, 1, :].copy()
            elif kind == "dinv":  # second half times -i
                rv[:, 1, :], iv[:, 1, :] = iv[:, 1, :], -rv[:, 1, :]
            else:  # (a, b) -> (-b, a)
                a_r, a_i = rv[:, 0, :].copy(), iv[:, 0, :].copy()
                rv[:, 0, :], iv[:, 0, :] = -rv[:, 1, :], -iv[:, 1, :]
                rv[:, 1, :], iv[:, 1, :] = a_r, a_i
            re, im = rv.reshape(-1), iv.reshape(-1)
        return re, im

    def matrix_at(self, k: int):
        return _LOCAL.get(self.local.get(k, ""), MAT_I)


DELTA_SCALAR = SQRT2 / (1 + I_UNIT)


def delta_op(n: int, l: int, j: int) -> DiagonalOp:
    return DiagonalOp(n, {l: "d", j: "d"}, DELTA_SCALAR)


def gamma_op(n: int, l: int, j: int) -> DiagonalOp:
    return DiagonalOp(n, {l: "dprime", j: "dprime"}, Cyclo8(-1))


# -- helpers -----------------------------------------------------------------


def _table(f: BooleanFunction) -> np.ndarray:
    return f.truth_table().astype(np.int64)


def _sign(f: BooleanFunction) -> np.ndarray:
    return 1 - 2 * _table(f)


def _gmul(re, im, a: int, b: int):
    return re * a - im * b, re * b + im * a


def _units(z4: np.ndarray):
    z4 = np.asarray(z4) % 4
    re = np.select([z4 == 0, z4 == 2], [1, -1], 0)
    im = np.select([z4 == 1, z4 == 3], [1, -1], 0)
    return re.astype(np.int64), im.astype(np.int64)


@lru_cache(maxsize=64)
def _gaussian_inverse(coeffs: tuple) -> tuple[int, int] | None:
    return Cyclo8(*coeffs).inverse().as_gaussian()


def _expect_equal(re, im, t_re, t_im, scalar: Cyclo8) -> bool:
    """``scalar * (re + i im) == t_re + i t_im`` with ``1/scalar`` required to be a Gaussian integer."""
    g = _gaussian_inverse(scalar.c)
    if g is None:
        raise ValueError("scalar inverse outside Z[i]")
    e_re, e_im = _gmul(t_re, t_im, *g)
    return bool(np.array_equal(re, e_re) and np.array_equal(im, e_im))


def _check_factors(factors: Sequence[BooleanFunction], n: int) -> None:
    for h in factors:
        if not isinstance(h, BooleanFunction):
            raise ValueError("factors must be BooleanFunction instances")
        if h.n != n:
            raise ValueError("factor defined on a different number of variables")


def _product(factors, n) -> BooleanFunction:
    m = BooleanFunction.one(n)
    for h in factors:
        m = m * h
    return m


# -- pivot as H_u H_v -----------------------------------------------------------


def pivot_identity_residual(p: BooleanFunction, u: int, v: int) -> BooleanFunction | None:
    """``r`` with ``H_u H_v (-1)^p = (-1)^{q + r}``, ``q`` the unstripped pivot; None if not ±1-valued."""
    if not is_admissible(p, u, v):
        raise InadmissibleEdgeError(f"x{u}x{v} is not an admissible pivot edge")
    s = bipolar(p)
    re, im = _butterfly(s.re, s.im, u, "H")
    re, im = _butterfly(re, im, v, "H")
    if im.any() or not np.all(np.abs(re) == 2):
        return None
    got = BooleanFunction.from_truth_table((re < 0).astype(np.uint8), p.n)
    return got + hyper_pivot(p, u, v, strip=False)


def verify_pivot_identity(p: BooleanFunction, u: int, v: int) -> bool:
    """``(-1)^{p_uvu} == H_u H_v (-1)^p`` exactly, including sign and affine terms."""
    r = pivot_identity_residual(p, u, v)
    return r is not None and not r


# -- H identities --------------------------------------------------------------


def verify_h_identities(factors: Sequence[BooleanFunction], p: BooleanFunction, i: int) -> dict:
    """Check ``H_i [m](-1)^p`` against the general closed form and against the branch
    that applies to the given factorisation ``m = prod(factors)``:

    * ``notinm`` when ``m`` does not depend on ``x_i`` (equality up to the factor 2
      the closed form drops),
    * ``inm`` when every factor involving ``x_i`` is ``x_i + g`` with ``g`` free of
      ``x_i`` (checked for every choice of the two free divisors),
    * otherwise only the general form applies.
    """
    n = p.n
    _check_factors(factors, n)
    if not 0 <= i < n:
        raise DimensionError(f"position {i} outside n={n}")
    m = _product(factors, n)
    s = phase_vector(m, Z4Function.lift(p))
    lhs_re, lhs_im = _butterfly(s.re, s.im, i, "H")

    xi = BooleanFunction.var(n, i)
    one = BooleanFunction.one(n)
    p0, p1 = p.restrict(i, 0), p.restrict(i, 1)
    pd = p0 + p1 + xi
    vs = [h for h in factors if h.depends_on(i)]
    r = _product([h for h in factors if not h.depends_on(i)], n)
    v = _product(vs, n)
    v0, v1 = v.restrict(i, 0), v.restrict(i, 1)

    gen = (_table(r * (v0 + v1)) * _sign(p0 + v1 * pd)
           + 2 * _table(r * v0 * v1 * (pd + one)) * _sign(p0))
    report = {
        "branch": "general",
        "general": bool(np.array_equal(lhs_re, gen) and not lhs_im.any()),
        "branch_ok": None,
        "choices": 0,
    }

    if not m.depends_on(i):
        report["branch"] = "notinm"
        rhs = _table(m * (pd + one)) * _sign(p0)
        report["branch_ok"] = bool(np.array_equal(lhs_re, 2 * rhs) and not lhs_im.any())
        report["choices"] = 1
    elif vs and all(h.neighbourhood(i) == one for h in vs):
        report["branch"] = "inm"
        ok = True
        count = 0
        for hj in vs:
            prod = one
            for hk in vs:
                if hk is not hj:
                    prod = prod * (hj + hk + one)
            ok &= prod == v0 + v1
            for hz in vs:
                hz1 = hz.restrict(i, 1)
                rhs = _table(r * prod) * _sign(p0 + hz1 * pd)
                ok &= bool(np.array_equal(lhs_re, rhs) and not lhs_im.any())
                count += 1
        report["branch_ok"] = bool(ok)
        report["choices"] = count
    return report


# -- N identity ---------------------------------------------------------------------


def verify_napf(m: BooleanFunction, p: Z4Function, j: int) -> bool:
    """``N_j [m] i^p == ([m_0] i^{p_0} + [m_1] i^{p_1 + 2 x_j + 1}) / sqrt 2``."""
    if m.n != p.n:
        raise DimensionError("n mismatch")
    if not 0 <= j < m.n:
        raise DimensionError(f"position {j} outside n={m.n}")
    s = phase_vector(m, p)
    lhs_re, lhs_im = _butterfly(s.re, s.im, j, "N")
    xj = _table(BooleanFunction.var(m.n, j))
    a_re, a_im = _units(p.restrict(j, 0).table)
    b_re, b_im = _units(p.restrict(j, 1).table + 2 * xj + 1)
    m0 = _table(m.restrict(j, 0))
    m1 = _table(m.restrict(j, 1))
    rhs_re = m0 * a_re + m1 * b_re
    rhs_im = m0 * a_im + m1 * b_im
    return bool(np.array_equal(lhs_re, rhs_re) and np.array_equal(lhs_im, rhs_im))


# -- LC chain -----------------------------------------------------------------------


def _decomposition(total: BooleanFunction, parts) -> list[BooleanFunction]:
    n = total.n
    if parts is None:
        return [BooleanFunction(n, frozenset({t})) for t in total.sorted_terms()]
    parts = list(parts)
    _check_factors(parts, n)
    acc = BooleanFunction.zero(n)
    for q in parts:
        acc = acc + q
    if acc != total:
        raise ValueError("decomposition does not sum to the neighbourhood function")
    return parts


def _pair_sum(parts, n) -> BooleanFunction:
    acc = BooleanFunction.zero(n)
    for a, b in combinations(parts, 2):
        acc = acc + a * b
    return acc


def lc_phase_functions(p: BooleanFunction, l: int, j: int, u_parts=None, v_parts=None) -> dict[str, Z4Function]:
    """The Z4 phase functions after LC(l) and after LC(l) then LC(j), from the closed forms."""
    n = p.n
    xl, xj = BooleanFunction.var(n, l), BooleanFunction.var(n, j)
    nl = p.neighbourhood(l) + xj
    nj = p.neighbourhood(j) + xl
    us = _decomposition(nl, u_parts)
    vs = _decomposition(nj, v_parts)
    rest = BooleanFunction(n, frozenset(t for t in p.terms if not t & ((1 << l) | (1 << j))))
    su = nl
    sv = nj
    p_l = Z4Function.combination(
        n, [(2, p + xj * su + _pair_sum(us, n))] + [(3, u) for u in us])
    cross = BooleanFunction.zero(n)
    for a in us:
        for b in vs:
            cross = cross + a * b
    inner = (xl * xj + xl * sv + xj * (su + sv) + _pair_sum(vs, n) + cross + su + rest)
    p_lj = Z4Function.combination(n, [(2, inner)] + [(3, v) for v in vs])
    return {"p_l": p_l, "p_lj": p_lj}


def _h_multiple(mat) -> Cyclo8 | None:
    c = mat[0][0] / MAT_H[0][0]
    scaled = mat_scale(c, MAT_H)
    return c if all(mat[r][k] == scaled[r][k] for r in range(2) for k in range(2)) else None


@lru_cache(maxsize=None)
def _operator_products() -> tuple:
    return tuple(sorted(operator_products_uncached().items()))


def operator_products() -> dict[str, bool]:
    return dict(_operator_products())


def operator_products_uncached() -> dict[str, bool]:
    """Per-position products of the LC chain, with the global scalars of three deltas and gamma.

    Position ``l`` sees N, d, d, N, d, d' (application order), position ``j`` sees
    d, N, d, d, d'.  Each product is a scalar multiple of H and, with the global
    scalar, the two-position operator is exactly H (x) H.  The ``as_attributed``
    entries test the per-position equalities with the global scalar placed on
    position ``j`` only; that placement is off by ``e^{-i pi/4}`` at each position.
    """
    delta_s = SQRT2 / (1 + I_UNIT)
    scalar = Cyclo8(-1) * delta_s * delta_s * delta_s

    def chain(ops):
        acc = MAT_I
        for op in ops:
            acc = mat_mul(op, acc)
        return acc

    at_l = chain([MAT_N, MAT_D, MAT_D, MAT_N, MAT_D, MAT_D_PRIME])
    at_j = chain([MAT_D, MAT_N, MAT_D, MAT_D, MAT_D_PRIME])
    c_l, c_j = _h_multiple(at_l), _h_multiple(at_j)
    eq = lambda a, b: all(a[r][k] == b[r][k] for r in range(2) for k in range(2))
    return {
        "position_l_multiple_of_H": c_l is not None,
        "position_j_multiple_of_H": c_j is not None,
        "tensor_is_HH": c_l is not None and c_j is not None and scalar * c_l * c_j == Cyclo8(1),
        "scalar_is_minus_inverse_e3pi4": scalar == -Cyclo8.zeta(3).inverse(),
        "as_attributed_l": eq(at_l, MAT_H),
        "as_attributed_j": eq(mat_scale(scalar, at_j), MAT_H),
    }


_CORE_PRODUCT_KEYS = ("position_l_multiple_of_H", "position_j_multiple_of_H", "tensor_is_HH")


@lru_cache(maxsize=None)
def _chain_scalars() -> tuple[Cyclo8, Cyclo8, Cyclo8]:
    """Accumulated scalars after one, two and three ``delta N`` steps (the last times gamma's)."""
    step = delta_op(1, 0, 0).scalar * INV_SQRT2
    return step, step * step, step * step * step * gamma_op(1, 0, 0).scalar


def verify_lc_chain(p: BooleanFunction, l: int, j: int, u_parts=None, v_parts=None) -> dict:
    """Check LC(l), LC(j), LC(l) as ``delta N`` steps and the final ``gamma``.

    Returns a report with ``step_l`` (``delta N_l (-1)^p = i^{p_l}``), ``step_lj``
    (``delta N_j delta N_l (-1)^p = i^{p_lj}``), ``chain`` (the full product equals
    the bipolar vector of the pivot) and ``positions`` (per-position collapse to H).
    """
    if not is_admissible(p, l, j):
        raise InadmissibleEdgeError(f"x{l}x{j} is not an admissible pivot edge")
    n = p.n
    phases = lc_phase_functions(p, l, j, u_parts, v_parts)
    delta = delta_op(n, l, j)
    gamma = gamma_op(n, l, j)
    s1, s2, s3 = _chain_scalars()

    s = bipolar(p)
    re, im = _butterfly(s.re, s.im, l, "N")
    re, im = delta.apply_local(re, im)
    step_l = _expect_equal(re, im, *_units(phases["p_l"].table), s1)

    re, im = _butterfly(re, im, j, "N")
    re, im = delta.apply_local(re, im)
    step_lj = _expect_equal(re, im, *_units(phases["p_lj"].table), s2)

    re, im = _butterfly(re, im, l, "N")
    re, im = delta.apply_local(re, im)
    re, im = gamma.apply_local(re, im)
    target = _sign(hyper_pivot(p, l, j, strip=False))
    chain = _expect_equal(re, im, target, np.zeros_like(target), s3)

    products = operator_products()
    positions = all(products[k] for k in _CORE_PRODUCT_KEYS)
    return {"step_l": step_l, "step_lj": step_lj, "chain": chain, "positions": positions,
            "ok": step_l and step_lj and chain and positions}


def lc_step_is_flat(p: BooleanFunction, l: int) -> bool:
    """``N_l (-1)^p`` has a flat spectrum (always true for quadratic ``p``)."""
    s = bipolar(p)
    re, im = _butterfly(s.re, s.im, l, "N")
    mag = re * re + im * im
    return bool((mag == mag[0]).all())
