"""Exact linear algebra over Q and F_3.

Rational matrices are plain lists of rows of :class:`fractions.Fraction`.
All eliminations are fraction-free: rows are scaled to integers first and
then reduced with Bareiss' update, so intermediate values stay polynomial
in size and nothing is ever rounded.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import ContractError, DimensionError

RatMatrix = list[list[Fraction]]


def rat_matrix(rows: Sequence[Sequence]) -> RatMatrix:
    """Coerce nested sequences (ints, Fractions, strings like '1/3') to a RatMatrix."""
    out = [[Fraction(x) for x in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix")
    return out


def _shape(M) -> tuple[int, int]:
    if len(M) == 0:
        return 0, 0
    cols = len(M[0])
    if any(len(r) != cols for r in M):
        raise DimensionError("ragged matrix")
    return len(M), cols


def _integer_rows(M) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return rows and the product of row scales."""
    rows = []
    scale = 1
    for row in M:
        fr = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([x.numerator * (d // x.denominator) for x in fr])
        scale *= d
    return rows, scale


def _integer_matrix(M) -> list[list[int]]:
    """Scale the whole matrix by one common denominator (keeps symmetry)."""
    fr = [[Fraction(x) for x in row] for row in M]
    d = lcm(*(x.denominator for row in fr for x in row)) if fr and fr[0] else 1
    return [[x.numerator * (d // x.denominator) for x in row] for row in fr]


def rat_rank(M) -> int:
    """Rank over Q by fraction-free row echelon reduction."""
    rows, cols = _shape(M)
    if rows == 0 or cols == 0:
        return 0
    a, _ = _integer_rows(M)
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pc = pr[c]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            if f == 0:
                # Bareiss step still has to rescale the row.
                a[i] = [0] * (c + 1) + [(pc * ai[j]) // prev for j in range(c + 1, cols)]
            else:
                a[i] = [0] * (c + 1) + [(pc * ai[j] - f * pr[j]) // prev for j in range(c + 1, cols)]
        prev = pc
        r += 1
        if r == rows:
            break
    return r


def rat_det(M) -> Fraction:
    """Exact determinant via Bareiss elimination."""
    rows, cols = _shape(M)
    if rows != cols:
        raise DimensionError(f"determinant of non-square {rows}x{cols} matrix")
    if rows == 0:
        return Fraction(1)
    a, scale = _integer_rows(M)
    n = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k]
        p = pk[k]
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            for j in range(k + 1, n):
                ai[j] = (p * ai[j] - f * pk[j]) // prev
            ai[k] = 0
        prev = p
    return Fraction(sign * a[n - 1][n - 1], scale)


def is_symmetric(M) -> bool:
    n, m = _shape(M)
    return n == m and all(M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n))


def psd_rank(M) -> int | None:
    """Rank of a symmetric matrix if it is positive semidefinite, else None.

    Symmetric Bareiss elimination with diagonal pivoting. After each step the
    remaining diagonal entries are principal minors with the sign of the
    corresponding Schur complement pivot, so a negative one certifies
    indefiniteness. When every remaining diagonal entry is zero the whole
    remaining block must vanish.
    """
    if not is_symmetric(M):
        raise ContractError("psd test requires a symmetric matrix")
    a = _integer_matrix(M)
    n = len(a)
    remaining = list(range(n))
    prev = 1
    rank = 0
    while remaining:
        diag = [a[i][i] for i in remaining]
        if min(diag) < 0:
            return None
        piv = next((i for i in remaining if a[i][i] > 0), None)
        if piv is None:
            for x, i in enumerate(remaining):
                ai = a[i]
                if any(ai[j] != 0 for j in remaining[x:]):
                    return None
            return rank
        remaining.remove(piv)
        ap = a[piv]
        p = ap[piv]
        for x, i in enumerate(remaining):
            ai = a[i]
            f = ai[piv]
            for j in remaining[x:]:
                val = (p * ai[j] - f * ap[j]) // prev
                ai[j] = val
                a[j][i] = val
        prev = p
        rank += 1
    return rank


def psd_with_rank_bound(M, rmax: int) -> bool:
    """True iff M is positive semidefinite with rank at most ``rmax``."""
    r = psd_rank(M)
    return r is not None and r <= rmax


# ---------------------------------------------------------------- F_3

def f3(M) -> np.ndarray:
    """Reduce an integer array-like mod 3 (returns a fresh int64 array)."""
    return np.mod(np.asarray(M, dtype=np.int64), 3)


def _f3_echelon(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = a.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        # 1 and 2 are self-inverse mod 3
        a[r] = (a[r] * a[r, c]) % 3
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % 3
        pivots.append(c)
        r += 1
    return a, pivots


def f3_rank(M) -> int:
    a = f3(M)
    if a.ndim != 2:
        raise DimensionError("expected a 2-d matrix")
    if a.size == 0:
        return 0
    return len(_f3_echelon(a)[1])


def f3_solve(M, b) -> np.ndarray | None:
    """One solution x of M x = b over F_3, or None if inconsistent."""
    a = f3(M)
    b = f3(b)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise DimensionError(f"incompatible shapes {a.shape} and {b.shape}")
    rows, cols = a.shape
    red, pivots = _f3_echelon(np.hstack([a, b[:, None]]))
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = red[r, cols]
    return x


def f3_inverse(M) -> np.ndarray | None:
    a = f3(M)
    n, m = a.shape
    if n != m:
        raise DimensionError("inverse of non-square matrix")
    red, pivots = _f3_echelon(np.hstack([a, np.eye(n, dtype=np.int64)]))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return red[:, n:]
