"""Lower and upper bounds on the minimal N admitting a k-regular map C^m -> C^N.

Lower bounds combine the trivial ``N >= k`` with the topological obstructions
for prime ``k`` and prime-power ``m``, propagated to larger ``k`` (a k-regular
map is (k-1)-regular) and to larger ``m`` (restriction to a coordinate
subspace preserves k-regularity).  Upper bounds come from the Veronese
projection constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime, perfect_power

from .errors import NotPrimeError


@dataclass(frozen=True)
class Bound:
    value: int
    tag: str


@dataclass(frozen=True)
class BoundsCell:
    k: int
    m: int
    lower: int
    lower_tag: str
    upper: int
    upper_tag: str
    nontrivial_lower: bool = True

    @property
    def tight(self) -> bool:
        return self.lower == self.upper

    @property
    def conjectured(self) -> int:
        """Conjectured exact value m(k-1)+1 (annotation only)."""
        return self.m * (self.k - 1) + 1

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "lower": self.lower, "lower_tag": self.lower_tag,
                "upper": self.upper, "upper_tag": self.upper_tag, "tight": self.tight,
                "nontrivial_lower": self.nontrivial_lower, "conjectured": self.conjectured}


def alpha_p(k: int, p: int) -> int:
    """Digit sum of ``k`` written in base ``p``."""
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    if k < 0:
        raise ValueError("k must be nonnegative")
    s = 0
    while k:
        k, r = divmod(k, p)
        s += r
    return s


def prime_power_base(m: int) -> int | None:
    """``p`` when ``m = p**t`` with ``t >= 1``, else None."""
    if m < 2:
        return None
    if isprime(m):
        return m
    # perfect_power reports the smallest base, so m = p**t iff that base is prime
    pp = perfect_power(m)
    if pp and isprime(pp[0]):
        return int(pp[0])
    return None


def _raw_lower(m: int, k: int) -> Bound:
    best = Bound(k, "trivial")
    if isprime(k):
        v = m * (k - 1) + 1
        if v > best.value:
            best = Bound(v, "prime-k")
    p = prime_power_base(m)
    if p is not None:
        a = alpha_p(k, p)
        v = m * (k - a) + a
        if v > best.value:
            best = Bound(v, f"prime-power-m(p={p})")
    return best


@lru_cache(maxsize=None)
def _lower(m: int, k: int) -> Bound:
    best = _raw_lower(m, k)
    if k > 1:
        prev = _lower(m, k - 1)
        if prev.value > best.value:
            best = Bound(prev.value, prev.tag if prev.tag.startswith("monotone") else f"monotone-k({prev.tag}@k={k - 1})")
    if m > 1:
        prev = _lower(m - 1, k)
        if prev.value > best.value:
            best = Bound(prev.value, f"monotone-m({prev.tag}@m={m - 1})")
    return best


def lower_bound_min_N(m: int, k: int) -> Bound:
    """Largest known obstruction: no k-regular C^m -> C^N for N below this value."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be >= 1")
    return _lower(m, k)


def upper_bound_min_N(m: int, k: int) -> Bound:
    """Smallest N for which a k-regular C^m -> C^N is constructed."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be >= 1")
    if k == 1:
        return Bound(1, "constant")
    cands = [Bound((m + 1) * (k - 1), "veronese-any-k"), Bound(k * m + k - 1, "transversality")]
    if k <= 9 or m <= 2:
        cands.append(Bound(m * (k - 1) + 1, "veronese-gorenstein"))
    if m == 1:
        cands.append(Bound(k, "vandermonde"))
    return min(cands, key=lambda b: b.value)


def hypersurface_bound(m: int, c: int, k: int) -> int:
    """Affine target dimension for k-regular embeddings of an m-manifold in R^(m+c)."""
    if m < 1 or c < 1 or k < 3:
        raise ValueError("need m >= 1, c >= 1, k >= 3")
    if c == 1:
        if k <= 9 or m == 1:
            return (m + 1) * (k - 1)
        if 10 <= k <= m + 2:
            return (m + 2) * (k - 1) - 1
        return (m + 1) * k - 1
    if k <= min(9, Fraction(m + c, c - 1)):
        return (m + c) * (k - 1)
    if 10 <= k <= Fraction(m + c + 1, c):
        return (m + c + 1) * (k - 1) - 1
    return (m + 1) * k - 1


def cell(m: int, k: int) -> BoundsCell:
    lo = lower_bound_min_N(m, k)
    hi = upper_bound_min_N(m, k)
    return BoundsCell(k, m, lo.value, lo.tag, hi.value, hi.tag,
                      nontrivial_lower=lo.value > k or m == 1)


def table(k_max: int, m_list) -> list[BoundsCell]:
    """Grid of cells for k = 2..k_max and each m, ordered by k then m."""
    if k_max > 64:
        raise ValueError("k_max must be <= 64")
    return [cell(m, k) for k in range(2, k_max + 1) for m in m_list]


def format_table(cells: list[BoundsCell]) -> str:
    ms = sorted({c.m for c in cells})
    ks = sorted({c.k for c in cells})
    lookup = {(c.k, c.m): c for c in cells}
    header = "k   " + "".join(f"{'m=' + str(m):>14}" for m in ms)
    lines = [header]
    for k in ks:
        row = f"{k:<4}"
        for m in ms:
            c = lookup[(k, m)]
            text = f"{c.lower}*" if c.tight else f"{c.lower}..{c.upper}"
            row += f"{text:>14}"
        lines.append(row)
    lines.append("(* = lower and upper bounds coincide)")
    return "\n".join(lines)
