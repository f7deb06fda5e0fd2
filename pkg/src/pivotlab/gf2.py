"""GF(2) linear algebra on int bitsets (bit j of a row = column j)."""

from __future__ import annotations

from typing import Sequence


def rank(rows: Sequence[int]) -> int:
    work = [r for r in rows if r]
    r = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        low = pivot & -pivot
        work = [w ^ pivot if w & low else w for w in work]
        work = [w for w in work if w]
        r += 1
    return r


def row_reduce(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form scanning columns 0..ncols-1; returns (rows, pivot columns)."""
    work = list(rows)
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        sel = next((k for k in range(top, len(work)) if work[k] & bit), None)
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        for k in range(len(work)):
            if k != top and work[k] & bit:
                work[k] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def principal_submatrix(rows: Sequence[int], subset: int, diag: int = 0) -> list[int]:
    """Rows of the principal submatrix on ``subset`` (still indexed by original columns).

    ``diag`` sets the diagonal bits for the vertices it contains.
    """
    out = []
    i = 0
    s = subset
    while s:
        if s & 1:
            out.append((rows[i] | (diag & (1 << i))) & subset)
        s >>= 1
        i += 1
    return out


def is_nonsingular(rows: Sequence[int], subset: int, diag: int = 0) -> bool:
    return rank(principal_submatrix(rows, subset, diag)) == subset.bit_count()


def transpose(rows: Sequence[int], ncols: int) -> list[int]:
    out = [0] * ncols
    for i, r in enumerate(rows):
        j = 0
        while r:
            if r & 1:
                out[j] |= 1 << i
            r >>= 1
            j += 1
    return out
