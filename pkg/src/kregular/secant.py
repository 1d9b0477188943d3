"""Secant varieties of Veronese embeddings.

``sigma_k(v_d(P^m))`` has expected dimension ``min(km + k - 1, C(m+d, d) - 1)``;
the Alexander-Hirschowitz theorem lists the only exceptions.  A Terracini
oracle measures the actual dimension over a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from sympy import isprime

from .errors import BadPrimeError, CapExceededError
from .exactmath import DEFAULT_PRIME, _rank_mod_p_lists, pivot_columns_mod_p_array
from .poly import monomials

TERRACINI_CAP = 300
REPETITIONS = 3


@dataclass(frozen=True)
class SecantDimResult:
    m: int
    d: int
    k: int
    ambient_dim: int
    expected_dim: int
    defective: bool
    actual_dim: int | None = None
    #: one of the small cases where sigma_k fails to be "large enough" for strong regularity
    restricted: bool = False
    source: str = "formula"
    repetitions: int | None = None

    def to_json(self) -> dict:
        out = {"m": self.m, "d": self.d, "k": self.k, "ambient_dim": self.ambient_dim,
               "expected_dim": self.expected_dim, "defective": self.defective,
               "restricted": self.restricted, "actual_dim": self.actual_dim, "source": self.source}
        if self.repetitions is not None:
            out["repetitions"] = self.repetitions
        return out


def expected_dim(m: int, d: int, k: int) -> int:
    return min(k * m + k - 1, comb(m + d, d) - 1)


def is_exceptional(m: int, d: int, k: int) -> bool:
    """True on the Alexander-Hirschowitz list of defective secant varieties."""
    return ((d == 2 and 2 <= k <= m)
            or (m, d, k) in {(2, 4, 5), (3, 4, 9), (4, 3, 7), (4, 4, 14)})


def restricted_value(m: int, d: int, k: int) -> int | None:
    """Known dimension for the cases where ``sigma_k(v_{k-1}) `` misses ``km + k - 1``."""
    if (m, d, k) == (2, 3, 4):
        return 9
    if (m, d, k) == (2, 4, 5):
        return 13
    if d == 2 and k == 3 and m >= 2:
        return 3 * m - 1
    if m == 1 and d + 1 < 2 * k <= 2 * d + 2:
        return d
    return None


def ah_dimension(m: int, d: int, k: int) -> SecantDimResult:
    if min(m, d, k) < 1:
        raise ValueError("m, d, k must be >= 1")
    actual = restricted_value(m, d, k)
    return SecantDimResult(m, d, k, comb(m + d, d) - 1, expected_dim(m, d, k),
                           is_exceptional(m, d, k), actual, actual is not None,
                           "closed form" if actual is not None else "formula")


def _jacobian_blocks(exps: np.ndarray, pts: np.ndarray, d: int, p: int) -> np.ndarray:
    """Stacked (m+1) x C(m+d, d) Jacobians of the degree-d monomial map at each point, mod p."""
    k, n = pts.shape
    pw = np.ones((k, n, d + 1), dtype=np.int64)
    for e in range(1, d + 1):
        pw[:, :, e] = (pw[:, :, e - 1] * pts) % p
    rows = []
    for pt in range(k):
        for i in range(n):
            val = np.ones(len(exps), dtype=np.int64)
            for j in range(n):
                e = exps[:, j] - (1 if j == i else 0)
                val = (val * pw[pt, j, np.maximum(e, 0)]) % p
            val = (val * (exps[:, i] % p)) % p
            rows.append(val)
    return np.array(rows, dtype=np.int64)


def _draw_points(m: int, d: int, seed: int, rep: int, count: int, prime: int) -> np.ndarray:
    rng = np.random.default_rng([seed, m, d, rep])
    return rng.integers(1, min(prime, 2**62), size=(count, m + 1), dtype=np.int64)


@lru_cache(maxsize=512)
def _prefix_ranks(m: int, d: int, seed: int, rep: int, count: int, prime: int) -> tuple[int, ...]:
    """Rank of the stacked Jacobians at the first j points, for j = 0..count."""
    exps = _exponents(m, d)
    pts = _draw_points(m, d, seed, rep, count, prime)
    # pivot columns of the transpose are the first independent Jacobian rows,
    # so one elimination yields every prefix rank
    piv = pivot_columns_mod_p_array(_jacobian_blocks(exps, pts % prime, d, prime).T, prime)
    block = m + 1
    return tuple(int(x) for x in np.searchsorted(piv, np.arange(count + 1) * block))


@lru_cache(maxsize=64)
def _exponents(m: int, d: int) -> np.ndarray:
    return np.array(monomials(m + 1, d), dtype=np.int64)


def terracini_dimension(m: int, d: int, k: int, prime: int = DEFAULT_PRIME, seed: int = 0,
                        repetitions: int = REPETITIONS, cap: int = TERRACINI_CAP,
                        target: int | None = None) -> int:
    """Dimension of ``sigma_k(v_d(P^m))`` from the rank of stacked Jacobians at random points.

    Repetition ``r`` draws its points from a generator seeded with
    ``(seed, m, d, r)`` and uses the first ``k`` of them, so the result is
    nondecreasing in ``k``.  Returns the maximum over repetitions, stopping
    early once ``target`` (default: the expected dimension) is reached.
    """
    if min(m, d, k) < 1:
        raise ValueError("m, d, k must be >= 1")
    if prime < 3 or not isprime(prime):
        raise BadPrimeError(f"{prime} is not an odd prime")
    n = comb(m + d, d)
    if n > cap:
        raise CapExceededError(f"C(m+d, d) = {n} exceeds the oracle cap {cap}")
    if target is None:
        target = expected_dim(m, d, k)
    # enough points to fill the ambient space, so one cached profile serves every k
    fill = -(-n // (m + 1)) + 1
    best = -1
    for r in range(repetitions):
        if prime < 2**31:
            prof = _prefix_ranks(m, d, seed, r, fill, prime)
            if k <= fill:
                rk = prof[k]
            elif prof[-1] == n:
                rk = n
            else:
                rk = _prefix_ranks(m, d, seed, r, k, prime)[k]
        else:
            pts = _draw_points(m, d, seed, r, k, prime).tolist()
            rk = _rank_mod_p_lists(_jacobian_blocks_big(_exponents(m, d), pts, d, prime), n, prime)
        best = max(best, rk - 1)
        if best >= target:
            break
    return best


def _jacobian_blocks_big(exps: np.ndarray, pts: list, d: int, p: int) -> list[list[int]]:
    # pure-Python variant for primes too large for int64 products
    ex = exps.tolist()
    rows = []
    for pt in pts:
        pw = [[pow(x, e, p) for e in range(d + 1)] for x in pt]
        for i in range(len(pt)):
            row = []
            for a in ex:
                if a[i] == 0:
                    row.append(0)
                    continue
                v = a[i]
                for j, e in enumerate(a):
                    v = v * pw[j][e - (j == i)] % p
                row.append(v)
            rows.append(row)
    return rows


def measured_dimension(m: int, d: int, k: int, prime: int = DEFAULT_PRIME, seed: int = 0,
                       repetitions: int = REPETITIONS) -> SecantDimResult:
    """``ah_dimension`` with ``actual_dim`` replaced by the oracle measurement."""
    base = ah_dimension(m, d, k)
    actual = terracini_dimension(m, d, k, prime, seed, repetitions)
    return SecantDimResult(m, d, k, base.ambient_dim, base.expected_dim, base.defective, actual,
                           base.restricted, "terracini", repetitions)


def strongly_regular_feasible(m: int, k: int, N: int) -> tuple[bool, str]:
    """Whether a strongly projectively k-regular morphism ``P^m -> P^N`` exists."""
    if k <= 2:
        return N >= m, f"k <= 2: exists iff N >= m = {m}"
    if N >= k * m + k - 1:
        return True, f"N >= km + k - 1 = {k * m + k - 1}"
    if m == 1 and N >= k - 1:
        return True, f"m = 1 and N >= k - 1 = {k - 1}"
    if m == 2 and k == 4 and N >= 9:
        return True, "m = 2, k = 4 and N >= 9"
    if m == 2 and k == 5 and N >= 13:
        return True, "m = 2, k = 5 and N >= 13"
    if k == 3 and N >= 3 * m - 1:
        return True, f"k = 3 and N >= 3m - 1 = {3 * m - 1}"
    return False, f"N = {N} below every sufficient threshold (km + k - 1 = {k * m + k - 1})"
