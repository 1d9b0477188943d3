"""Veronese-plus-projection constructions and the explicit example maps."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .bounds import lower_bound_min_N
from .errors import BudgetExhaustedError, InfeasibleWarning, UnknownExampleError
from .exactmath import DEFAULT_PRIME
from .poly import ALIASES, Polynomial, PolyMap, default_variables, monomials_upto, parse_poly
from .regularity import (DomainBall, RegularityReport, _rng, check_regularity, random_rational)

#: verification radius for maps whose regularity is only claimed near the origin
LOCAL_RADIUS = Fraction(1, 8)

_FIXTURES = {
    "monomial-nonreg-2-7": (2, ["1", "s", "t", "s^2", "t^2", "s^3", "t^3"]),
    "fourreg-2-7": (2, ["1", "s", "t", "s^2", "s*t", "t^2 - s^3", "t^3"]),
    "fourreg-3-10": (3, ["1", "t", "s", "u", "s*t", "s*u", "s^2 - t*u", "t^2 - s^3", "u^2 - t^3", "u^3"]),
    "fivereg-2-9": (2, ["1", "s", "t", "s^2", "s*t", "t^2", "t^3", "s^3 - t^4", "s^4"]),
}

#: fixtures whose regularity is claimed only on a small disc around 0
LOCAL_FIXTURES = {"fourreg-3-10"}

FIXTURE_NAMES = ("vandermonde(k)", "threereg(m)") + tuple(_FIXTURES)


def vandermonde(k: int) -> PolyMap:
    """``t -> (1, t, ..., t^(k-1))``."""
    comps = tuple(Polynomial.monomial((j,)) for j in range(k))
    return PolyMap(1, comps, "linear", f"vandermonde-{k}", ("t",))


def threereg(m: int) -> PolyMap:
    """``(t_1..t_m) -> (1, t_1, t_1^2, ..., t_m, t_m^2)``."""
    comps = [Polynomial.constant(m, 1)]
    for i in range(m):
        x = Polynomial.variable(m, i)
        comps += [x, x * x]
    return PolyMap(m, tuple(comps), "linear", f"threereg-{m}")


def paper_example(name: str) -> PolyMap:
    """Named fixture map.

    Accepted names: ``vandermonde-K`` / ``vandermonde(K)``, ``threereg-M`` /
    ``threereg(M)``, ``monomial-nonreg-2-7``, ``fourreg-2-7``, ``fourreg-3-10``,
    ``fivereg-2-9``.
    """
    mt = re.fullmatch(r"(vandermonde|threereg)[-(](\d+)\)?", name.strip())
    if mt:
        n = int(mt.group(2))
        if n < 1:
            raise UnknownExampleError(name)
        return vandermonde(n) if mt.group(1) == "vandermonde" else threereg(n)
    if name not in _FIXTURES:
        raise UnknownExampleError(f"unknown example {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    m, rows = _FIXTURES[name]
    names = ALIASES[m]
    return PolyMap(m, tuple(parse_poly(r, names) for r in rows), "linear", name, names)


def default_radius(name: str) -> Fraction:
    return LOCAL_RADIUS if name in LOCAL_FIXTURES else Fraction(1)


@dataclass
class ConstructedMap:
    map: PolyMap
    m: int
    k: int
    N: int
    method: str
    projection_seed: int
    attempts: int
    report: RegularityReport
    infeasible: bool = False

    def to_json(self) -> dict:
        return {
            "m": self.m, "k": self.k, "N": self.N, "method": self.method,
            "projection_seed": self.projection_seed, "attempts": self.attempts,
            "infeasible": self.infeasible,
            "components": self.map.formatted(),
            "report": self.report.to_json(),
        }


def default_target(m: int, k: int) -> int:
    """Affine target dimension N; the linear map has N + 1 components."""
    if k <= 9 or m <= 2:
        return m * (k - 1)
    return (m + 1) * (k - 1) - 1


def projected_veronese(m: int, k: int, N: int, seed: int) -> PolyMap:
    """``(1, P v)`` where ``v`` are the nonconstant monomials of degree <= k-1 and ``P`` is a
    random rational N x (C(m+k-1, k-1) - 1) matrix."""
    d = max(k - 1, 1)
    monos = monomials_upto(m, d)[1:]
    rng = _rng(seed, 7, 0)
    comps = [Polynomial.constant(m, 1)]
    for _ in range(N):
        terms = {}
        while not terms:
            terms = {e: random_rational(rng) for e in monos}
            terms = {e: c for e, c in terms.items() if c}
        comps.append(Polynomial(m, terms))
    return PolyMap(m, tuple(comps), "linear", f"projected-veronese-{m}-{k}-{N}", default_variables(m))


def construct_k_regular(m: int, k: int, N: int | None = None, seed: int = 0, budget: int = 32,
                        trials: int = 1000, radius=LOCAL_RADIUS,
                        prime: int = DEFAULT_PRIME) -> ConstructedMap:
    """Project the degree-(k-1) affine Veronese to N + 1 linear coordinates.

    Attempt ``i`` uses projection seed ``seed + i``; the first attempt whose
    verification passes is returned.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be >= 1")
    if N is None:
        N = default_target(m, k)
    infeasible = N + 1 < lower_bound_min_N(m, k).value
    if infeasible:
        warnings.warn(f"N = {N} is below the known lower bound for (m={m}, k={k})", InfeasibleWarning)
    domain = DomainBall.unit(m, radius)
    best: RegularityReport | None = None
    for attempt in range(budget):
        pseed = seed + attempt
        f = projected_veronese(m, k, N, pseed)
        report = check_regularity(f, k, domain, trials, seed, stop_at_first=True, prime=prime)
        if report.passed:
            return ConstructedMap(f, m, k, N, "veronese-projection", pseed, attempt + 1, report, infeasible)
        if best is None or _progress(report) > _progress(best):
            best = report
    raise BudgetExhaustedError(f"no {k}-regular projection to N={N} found in {budget} attempts", best)


def _progress(report: RegularityReport) -> int:
    return sum(s.trials - s.failures for s in report.strategies)
