"""Exact rational matrices, ranks, kernels, and modular rank shadows.

Scalars are :class:`fractions.Fraction` values (always in lowest terms with a
positive denominator).  Ranks over the rationals are computed by fraction-free
Bareiss elimination on row-integerized copies; kernels use Gauss-Jordan over
``Fraction``.  Modular ranks are cheap one-sided certificates: a full modular
rank proves full rational rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPrimeError

Rational = Fraction

#: Mersenne prime 2^31 - 1; products of two residues fit in int64.
DEFAULT_PRIME = 2147483647


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                              tuple(() for _ in range(self.cols)))

    def append_row(self, row: Sequence) -> "RationalMatrix":
        new = tuple(Fraction(x) for x in row)
        if len(new) != self.cols:
            raise ValueError("row length mismatch")
        return RationalMatrix(self.rows + 1, self.cols, self.entries + (new,))

    def select_rows(self, idx: Iterable[int]) -> "RationalMatrix":
        picked = tuple(self.entries[i] for i in idx)
        return RationalMatrix(len(picked), self.cols, picked)

    def scale_column(self, j: int, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.rows, self.cols, tuple(
            r[:j] + (r[j] * c,) + r[j + 1:] for r in self.entries))

    def vecmul_left(self, v: Sequence) -> tuple[Fraction, ...]:
        """Return the row vector ``v @ self``."""
        if len(v) != self.rows:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.cols
        for coef, r in zip(v, self.entries):
            if coef:
                for j, x in enumerate(r):
                    if x:
                        out[j] += coef * x
        return tuple(out)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def integer_rows(m: RationalMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for r in m.entries:
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([x.numerator * (den // x.denominator) for x in r])
    return out


def _bareiss_rank(a: list[list[int]], ncols: int) -> int:
    n = len(a)
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == n:
            break
        piv = next((i for i in range(rank, n) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        top = a[rank]
        p = top[c]
        for i in range(rank + 1, n):
            row = a[i]
            aic = row[c]
            if aic:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - aic * top[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals (fraction-free Bareiss elimination)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.rows > m.cols:
        m = m.transpose()
    return _bareiss_rank(integer_rows(m), m.cols)


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over ``Fraction``; returns (rows, pivot columns)."""
    a = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space ``{v : m v = 0}``; empty iff rank = cols."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def left_kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{c : c m = 0}`` (row dependencies)."""
    return kernel_basis(m.transpose())


def reduce_mod_p(m: RationalMatrix, p: int) -> list[list[int]]:
    out = []
    for r in m.entries:
        row = []
        for x in r:
            den = x.denominator % p
            if den == 0:
                raise BadPrimeError(f"denominator {x.denominator} vanishes mod {p}")
            row.append(x.numerator * pow(den, -1, p) % p)
        out.append(row)
    return out


def _rank_mod_p_lists(a: list[list[int]], ncols: int, p: int) -> int:
    n = len(a)
    rank = 0
    for c in range(ncols):
        if rank == n:
            break
        piv = next((i for i in range(rank, n) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        top = a[rank]
        inv = pow(top[c], -1, p)
        for i in range(rank + 1, n):
            row = a[i]
            f = row[c] * inv % p
            if f:
                for j in range(c, ncols):
                    row[j] = (row[j] - f * top[j]) % p
        rank += 1
    return rank


def rank_mod_p(m: RationalMatrix, p: int = DEFAULT_PRIME) -> int:
    """Rank of the reduction of ``m`` modulo the prime ``p`` (never exceeds :func:`rank`)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a = reduce_mod_p(m, p)
    if m.rows > m.cols:
        a = [list(col) for col in zip(*a)]
        return _rank_mod_p_lists(a, m.rows, p)
    return _rank_mod_p_lists(a, m.cols, p)


def pivot_columns_mod_p_array(a: np.ndarray, p: int = DEFAULT_PRIME) -> list[int]:
    """Pivot columns of the row echelon form of ``a`` modulo ``p``.

    These are the lexicographically first independent columns, so the rank of
    the first ``c`` columns is the number of pivots below ``c``.  Requires
    ``p < 2**31`` so that products of residues fit in int64.
    """
    if p >= 2**31:
        raise ValueError("int64 elimination needs p < 2**31")
    a = np.array(a, dtype=np.int64) % p
    n, ncols = a.shape
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        if rank == n:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        top = (a[rank, c:] * inv) % p
        below = a[rank + 1:, c]
        mask = below != 0
        if mask.any():
            rows = np.flatnonzero(mask) + rank + 1
            a[rows, c:] = (a[rows, c:] - (a[rows, c][:, None] * top[None, :]) % p) % p
        pivots.append(c)
        rank += 1
    return pivots


def rank_mod_p_array(a: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    """Rank of an integer array modulo ``p`` (vectorized int64 elimination, ``p < 2**31``)."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2 or 0 in a.shape:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(pivot_columns_mod_p_array(a, p))


def certified_rank(m: RationalMatrix, p: int = DEFAULT_PRIME) -> int:
    """Exact rank, short-circuited when the modular rank is already maximal.

    rank_mod_p <= rank <= min(rows, cols), so a maximal modular rank certifies
    the rational rank; anything smaller triggers exact Bareiss elimination.
    """
    full = min(m.rows, m.cols)
    try:
        if rank_mod_p(m, p) == full:
            return full
    except BadPrimeError:
        pass
    return rank(m)
