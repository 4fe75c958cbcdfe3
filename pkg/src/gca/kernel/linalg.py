"""Exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple


def det_exact(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators so the elimination runs on Python
    ints; the scaling is divided back out at the end. Pivot search scans down
    the current column and swaps the first nonzero row up, so the result sign
    is fixed by the input row order.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det_exact needs a square matrix")
    if n == 0:
        return Fraction(1)
    a: List[List[int]] = []
    scale = 1
    for row in m:
        row = [Fraction(x) for x in row]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        scale *= d
        a.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        row_r = [x * inv for x in a[r]]
        a[r] = row_r
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                row_i = a[i]
                a[i] = [x - f * y for x, y in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


class SparseEliminator:
    """Incremental row reduction for large sparse systems.

    Rows are dicts column -> Fraction. Each added row is reduced against the
    stored pivots; pivot rows are kept fully reduced against each other only
    at ``nullspace`` time.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict) -> bool:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            c = min(row)
            prow = self.pivot_rows.get(c)
            if prow is None:
                inv = 1 / row[c]
                self.pivot_rows[c] = {k: v * inv for k, v in row.items()}
                return True
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def nullspace(self) -> List[List[Fraction]]:
        # back-substitute from the highest pivot down to get a fully reduced form
        reduced: dict[int, dict[int, Fraction]] = {}
        for c in sorted(self.pivot_rows, reverse=True):
            row = dict(self.pivot_rows[c])
            for k in [k for k in row if k != c and k in reduced]:
                f = row.pop(k)
                for kk, v in reduced[k].items():
                    if kk == k:
                        continue
                    nv = row.get(kk, 0) - f * v
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            reduced[c] = row
        free = [c for c in range(self.ncols) if c not in reduced]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for p, row in reduced.items():
                if f in row:
                    v[p] = -row[f]
            basis.append(v)
        return basis
