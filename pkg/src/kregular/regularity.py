"""Randomized and adversarial k-regularity testing with certified counterexamples.

A map ``f = (f_1, ..., f_N)`` is linearly k-regular when the k x N matrix of
values ``f_j(p_i)`` has rank k for every choice of k distinct points.  Every
rank here is exact, so a rank drop is a proof of non-regularity; a PASSED
verdict only records that no trial found one.

Four point-selection strategies are run:

``random``   k points sampled in the domain ball
``grid``     axis-aligned product configurations (2x2 grids, a x b grids,
             cubes, axis-parallel lines)
``cluster``  k points ``p + eps*v_i`` with ``eps = 2**-1 ... 2**-20``
``jet``      curvilinear limits: Taylor rows of ``f`` along random arcs

Trial ``t`` of strategy ``s`` draws from its own generator seeded with
``(seed, s, t)``, so results do not depend on execution order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ArityError, ConversionError, DomainError
from .exactmath import (DEFAULT_PRIME, RationalMatrix, certified_rank, left_kernel_basis)
from .poly import Polynomial, PolyMap

STRATEGIES = ("random", "grid", "cluster", "jet")
PROVENANCES = ("random", "grid", "cluster", "user")

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class DomainBall:
    """Open Euclidean ball with rational center and radius."""

    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(Fraction(x) for x in self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise DomainError(f"ball radius must be positive, got {self.radius}")

    @classmethod
    def unit(cls, m: int, radius=1) -> "DomainBall":
        return cls((Fraction(0),) * m, Fraction(radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, p: Sequence) -> bool:
        d2 = sum((Fraction(x) - c) ** 2 for x, c in zip(p, self.center))
        return d2 < self.radius ** 2

    def to_json(self) -> dict:
        return {"center": [str(x) for x in self.center], "radius": str(self.radius)}


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[Point, ...]
    provenance: str = "user"

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if len(set(pts)) != len(pts):
            raise ValueError("configuration points must be pairwise distinct")
        if len({len(p) for p in pts}) > 1:
            raise ArityError("points have different lengths")

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class StrategyStats:
    name: str
    trials: int
    failures: int


@dataclass(frozen=True)
class Counterexample:
    """Certified witness of a rank drop.

    For ``strategy == "jet"`` the rows are Taylor coefficients along the arc
    ``base + sum_j arc[j-1] * t**j``; otherwise they are values at ``points``.
    """

    strategy: str
    trial: int
    points: tuple[Point, ...]
    kernel_vector: tuple[Fraction, ...]
    arc: tuple[Point, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "strategy": self.strategy,
            "trial": self.trial,
            "points": [[str(x) for x in p] for p in self.points],
            "kernel_vector": [str(x) for x in self.kernel_vector],
        }
        if self.arc is not None:
            out["arc"] = [[str(x) for x in c] for c in self.arc]
        return out


@dataclass
class RegularityReport:
    map: str
    kind: str
    k: int
    domain: DomainBall
    strategies: list[StrategyStats]
    verdict: str
    counterexample: Counterexample | None
    seed: int

    @property
    def passed(self) -> bool:
        return self.verdict == "PASSED"

    def to_json(self) -> dict:
        out = {
            "map": self.map,
            "kind": self.kind,
            "k": self.k,
            "domain": self.domain.to_json(),
            "strategies": [{"name": s.name, "trials": s.trials, "failures": s.failures}
                           for s in self.strategies],
            "verdict": self.verdict,
            "probabilistic": self.verdict == "PASSED",
            "seed": self.seed,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


@dataclass(frozen=True)
class JetOutcome:
    passed: bool
    trials: int
    counterexample: Counterexample | None = None


# -- criterion matrices ---------------------------------------------------

def _dehomogenize_first(p: Polynomial) -> Polynomial:
    terms: dict = {}
    for e, c in p.terms.items():
        terms[e[1:]] = terms.get(e[1:], 0) + c
    return Polynomial(p.num_vars - 1, terms)


def linearized(f: PolyMap) -> PolyMap:
    """Linear map whose linear regularity is equivalent to ``f``'s own kind.

    affine: prepend the constant 1.  projective on projective source: restrict
    to the chart where the first variable is 1.  Otherwise unchanged.
    """
    if f.kind == "affine":
        one = Polynomial.constant(f.num_vars, 1)
        return PolyMap(f.num_vars, (one,) + f.components, "linear", f.name, f.variables)
    if f.source_projective:
        if f.num_vars < 2:
            raise ArityError("projective source needs at least two homogeneous variables")
        comps = tuple(_dehomogenize_first(c) for c in f.components)
        return PolyMap(f.num_vars - 1, comps, "linear", f.name, f.variables[1:])
    return f.with_kind("linear")


def source_dim(f: PolyMap) -> int:
    return f.num_vars - 1 if f.source_projective else f.num_vars


def evaluation_matrix(f: PolyMap, cfg: PointConfiguration | Sequence[Sequence]) -> RationalMatrix:
    """k x N matrix whose row i is ``f`` evaluated at point i."""
    pts = cfg.points if isinstance(cfg, PointConfiguration) else cfg
    for p in pts:
        if len(p) != f.num_vars:
            raise ArityError(f"point of length {len(p)} for a map in {f.num_vars} variables")
    return RationalMatrix.from_rows((f(p) for p in pts), cols=len(f.components))


def _truncated_mul(a: list[Fraction], b: list[Fraction], k: int) -> list[Fraction]:
    out = [Fraction(0)] * k
    for i, x in enumerate(a):
        if x:
            for j in range(k - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def jet_matrix(f: PolyMap, base_point: Sequence, arc: Sequence[Sequence], k: int) -> RationalMatrix:
    """k x N matrix of Taylor rows ``(d/dt)^i (f o gamma)(0) / i!``, i = 0..k-1.

    ``gamma(t) = base_point + sum_j arc[j-1] * t**j``.
    """
    m = f.num_vars
    if len(base_point) != m or any(len(c) != m for c in arc):
        raise ArityError("base point / arc coefficients do not match the map's variables")
    series = []
    for i in range(m):
        s = [Fraction(0)] * k
        s[0] = Fraction(base_point[i])
        for j, c in enumerate(arc[: k - 1], start=1):
            s[j] = Fraction(c[i])
        series.append(s)
    maxdeg = [0] * m
    for comp in f.components:
        for e in comp.terms:
            for i, x in enumerate(e):
                maxdeg[i] = max(maxdeg[i], x)
    one = [Fraction(1)] + [Fraction(0)] * (k - 1)
    pows = []
    for i in range(m):
        p = [one]
        for _ in range(maxdeg[i]):
            p.append(_truncated_mul(p[-1], series[i], k))
        pows.append(p)
    cols = []
    for comp in f.components:
        acc = [Fraction(0)] * k
        for e, c in comp.terms.items():
            term = [c] + [Fraction(0)] * (k - 1)
            for i, x in enumerate(e):
                if x:
                    term = _truncated_mul(term, pows[i][x], k)
            acc = [u + v for u, v in zip(acc, term)]
        cols.append(acc)
    return RationalMatrix.from_rows(zip(*cols), cols=len(cols)) if cols else RationalMatrix.zeros(k, 0)


# -- sampling -------------------------------------------------------------

def _rng(seed: int, strategy: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, strategy, trial])


def random_rational(rng: np.random.Generator) -> Fraction:
    """a/b with |a| <= 1000 and 1 <= b <= 1000."""
    return Fraction(int(rng.integers(-1000, 1001)), int(rng.integers(1, 1001)))


def _unit_ball_vector(rng: np.random.Generator, m: int) -> Point:
    for _ in range(64):
        v = tuple(random_rational(rng) / 1000 for _ in range(m))
        if sum(x * x for x in v) < 1:
            return v
    scale = Fraction(1, math.isqrt(m) + 1)
    return tuple(random_rational(rng) / 1000 * scale for _ in range(m))


def sample_point(rng: np.random.Generator, ball: DomainBall, shrink=1) -> Point:
    """Random rational point in the concentric ball of radius ``radius * shrink``."""
    v = _unit_ball_vector(rng, ball.dim)
    r = ball.radius * Fraction(shrink)
    return tuple(c + r * x for c, x in zip(ball.center, v))


def _distinct_points(draw, k: int) -> tuple[Point, ...]:
    pts: list[Point] = []
    while len(pts) < k:
        p = draw()
        if p not in pts:
            pts.append(p)
    return tuple(pts)


def grid_shapes(m: int, k: int) -> list[tuple]:
    """Product configuration shapes tried by the grid strategy (empty when m < 2)."""
    if m < 2:
        return []
    shapes: list[tuple] = []
    if k >= 4:
        shapes.append(("grid", 2, 2))
    for a in range(2, math.isqrt(k) + 1):
        if k % a == 0 and (a, k // a) != (2, 2):
            shapes.append(("grid", a, k // a))
    j = k.bit_length() - 1
    if k == 1 << j and 3 <= j <= m:
        shapes.append(("cube", j))
    shapes.append(("line", k))
    return shapes


def _distinct_offsets(rng, count: int, h: Fraction) -> list[Fraction]:
    vals: list[Fraction] = []
    while len(vals) < count:
        x = random_rational(rng) / 1000 * h
        if x not in vals:
            vals.append(x)
    return vals


def grid_configuration(rng: np.random.Generator, ball: DomainBall, shape: tuple, k: int) -> PointConfiguration:
    m = ball.dim
    base = sample_point(rng, ball, Fraction(1, 2))
    if shape[0] == "grid":
        axes_needed = 2
    elif shape[0] == "cube":
        axes_needed = shape[1]
    else:
        axes_needed = 1
    axes = [int(a) for a in rng.permutation(m)[:axes_needed]]
    h = ball.radius / (2 * axes_needed)

    def place(offsets: dict[int, Fraction]) -> Point:
        return tuple(b + offsets.get(i, 0) for i, b in enumerate(base))

    if shape[0] == "grid":
        _, a, b = shape
        xs = _distinct_offsets(rng, a, h)
        ys = _distinct_offsets(rng, b, h)
        pts = [place({axes[0]: x, axes[1]: y}) for x in xs for y in ys]
    elif shape[0] == "cube":
        vals = [_distinct_offsets(rng, 2, h) for _ in axes]
        pts = []
        for idx in range(1 << len(axes)):
            pts.append(place({ax: vals[n][(idx >> (len(axes) - 1 - n)) & 1] for n, ax in enumerate(axes)}))
    else:
        xs = _distinct_offsets(rng, shape[1], h)
        pts = [place({axes[0]: x}) for x in xs]
    # pad prime-sized requests beyond the 2x2 core with random points
    while len(pts) < k:
        p = sample_point(rng, ball)
        if p not in pts:
            pts.append(p)
    return PointConfiguration(tuple(pts), "grid")


def cluster_configuration(rng: np.random.Generator, ball: DomainBall, k: int, eps: Fraction) -> PointConfiguration:
    base = sample_point(rng, ball, Fraction(1, 2))
    dirs = _distinct_points(lambda: _unit_ball_vector(rng, ball.dim), k)
    scale = eps * ball.radius / 2
    pts = tuple(tuple(b + scale * v for b, v in zip(base, d)) for d in dirs)
    return PointConfiguration(pts, "cluster")


def random_arc(rng: np.random.Generator, m: int, k: int) -> tuple[Point, ...]:
    """Coefficients of t, t^2, ..., t^(k-1); the velocity is never zero."""
    arc = []
    for j in range(1, k):
        while True:
            c = tuple(random_rational(rng) for _ in range(m))
            if j > 1 or any(c):
                break
        arc.append(c)
    return tuple(arc)


# -- trial execution ------------------------------------------------------

def _certificate(mat: RationalMatrix) -> tuple[Fraction, ...]:
    vec = left_kernel_basis(mat)[0]
    lead = next(x for x in vec if x)
    return tuple(x / lead for x in vec)


def _run_trial(lin: PolyMap, k: int, ball: DomainBall, strategy: str, trial: int, seed: int,
               eps_exponent: int, prime: int) -> tuple[bool | None, Counterexample | None]:
    """Return (ok, counterexample); ok is None when the strategy does not apply."""
    sidx = STRATEGIES.index(strategy)
    rng = _rng(seed, sidx, trial)
    m = lin.num_vars
    arc = None
    if strategy == "random":
        cfg = PointConfiguration(_distinct_points(lambda: sample_point(rng, ball), k), "random")
    elif strategy == "grid":
        shapes = grid_shapes(m, k)
        if not shapes:
            return None, None
        cfg = grid_configuration(rng, ball, shapes[trial % len(shapes)], k)
    elif strategy == "cluster":
        if k < 2:
            return None, None
        eps = Fraction(1, 2 ** (1 + trial % eps_exponent))
        cfg = cluster_configuration(rng, ball, k, eps)
    else:
        base = ball.center if trial == 0 else sample_point(rng, ball)
        arc = random_arc(rng, m, k)
        mat = jet_matrix(lin, base, arc, k)
        if certified_rank(mat, prime) == k:
            return True, None
        return False, Counterexample(strategy, trial, (tuple(base),), _certificate(mat), arc)
    mat = evaluation_matrix(lin, cfg)
    if certified_rank(mat, prime) == k:
        return True, None
    return False, Counterexample(strategy, trial, cfg.points, _certificate(mat))


def _run_batch(args):
    lin, k, ball, strategy, trials, seed, eps_exponent, prime, stop = args
    out = []
    for t in trials:
        ok, cex = _run_trial(lin, k, ball, strategy, t, seed, eps_exponent, prime)
        out.append((t, ok, cex))
        if stop and ok is False:
            break
    return out


def _worker_count(workers: int | None) -> int:
    cap = os.environ.get("KREG_THREADS")
    n = workers if workers is not None else 1
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def check_regularity(f: PolyMap, k: int, domain: DomainBall | None = None, budget: int = 1000,
                     seed: int = 0, strategies: Sequence[str] = STRATEGIES, *,
                     stop_at_first: bool = False, eps_exponent: int = 20,
                     prime: int = DEFAULT_PRIME, workers: int | None = None) -> RegularityReport:
    """Test k-regularity of ``f`` on a ball with ``budget`` trials per strategy.

    The first counterexample (in strategy order, then trial index) is reported.
    With ``stop_at_first`` the battery ends as soon as one is found; otherwise
    every trial runs and failures are counted.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    lin = linearized(f)
    if domain is None:
        domain = DomainBall.unit(lin.num_vars)
    if domain.dim != lin.num_vars:
        raise ArityError(f"domain of dimension {domain.dim} for a map on {lin.num_vars} variables")
    for s in strategies:
        if s not in STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")

    nworkers = _worker_count(workers)
    stats: list[StrategyStats] = []
    first: Counterexample | None = None
    for s in STRATEGIES:
        if s not in strategies:
            continue
        if nworkers > 1:
            chunks = [list(range(i, budget, nworkers)) for i in range(nworkers)]
            with ProcessPoolExecutor(nworkers) as ex:
                parts = ex.map(_run_batch, [(lin, k, domain, s, c, seed, eps_exponent, prime, False)
                                            for c in chunks])
                results = sorted((r for part in parts for r in part), key=lambda r: r[0])
        else:
            results = _run_batch((lin, k, domain, s, range(budget), seed, eps_exponent, prime,
                                  stop_at_first))
        applied = [r for r in results if r[1] is not None]
        fails = [r for r in applied if r[1] is False]
        if stop_at_first and fails:
            applied = [r for r in applied if r[0] <= fails[0][0]]
            fails = fails[:1]
        stats.append(StrategyStats(s, len(applied), len(fails)))
        if fails and first is None:
            first = fails[0][2]
        if stop_at_first and first is not None:
            break
    verdict = "COUNTEREXAMPLE" if first is not None else "PASSED"
    return RegularityReport(f.name or "user", f.kind, k, domain, stats, verdict, first, seed)


def check_jet(f: PolyMap, k: int, base_point: Sequence, arc_directions: int = 200, seed: int = 0,
              prime: int = DEFAULT_PRIME) -> JetOutcome:
    """Curvilinear test at one point: ``arc_directions`` random arcs through ``base_point``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lin = linearized(f)
    if len(base_point) != lin.num_vars:
        raise ArityError("base point length does not match the map")
    sidx = STRATEGIES.index("jet")
    for t in range(arc_directions):
        rng = _rng(seed, sidx, t)
        arc = random_arc(rng, lin.num_vars, k)
        mat = jet_matrix(lin, base_point, arc, k)
        if certified_rank(mat, prime) < k:
            cex = Counterexample("jet", t, (tuple(Fraction(x) for x in base_point),), _certificate(mat), arc)
            return JetOutcome(False, t + 1, cex)
    return JetOutcome(True, arc_directions)


def verify_counterexample(f: PolyMap, cex: Counterexample, k: int | None = None) -> bool:
    """Re-check a stored witness exactly: nonzero kernel vector annihilating the rows."""
    lin = linearized(f)
    if cex.arc is not None:
        mat = jet_matrix(lin, cex.points[0], cex.arc, k or len(cex.kernel_vector))
    else:
        mat = evaluation_matrix(lin, cex.points)
    if not any(cex.kernel_vector):
        return False
    return all(x == 0 for x in mat.vecmul_left(cex.kernel_vector))


# -- kind conversion ------------------------------------------------------

CONVERSIONS = {("affine", "projective"), ("linear", "projective"),
               ("projective", "affine"), ("affine", "linear")}


def convert(f: PolyMap, from_kind: str, to_kind: str, divisor: int = 0,
            domain: DomainBall | None = None, samples: int = 64, seed: int = 0) -> PolyMap:
    """Move between regularity kinds along the four permitted directions.

    affine -> linear       prepend the constant 1
    affine -> projective   homogeneous coordinates ``[1 : f]``
    linear -> projective   read components as homogeneous coordinates
    projective -> affine   divide by coordinate ``divisor`` (must be a nonzero constant)
    """
    if f.kind != from_kind:
        raise ConversionError(f"map has kind {f.kind!r}, not {from_kind!r}")
    if (from_kind, to_kind) not in CONVERSIONS:
        raise ConversionError(f"no regularity conversion {from_kind} -> {to_kind}")
    one = Polynomial.constant(f.num_vars, 1)
    if from_kind == "affine":
        return PolyMap(f.num_vars, (one,) + f.components, to_kind, f.name, f.variables)
    if from_kind == "linear":
        return f.with_kind("projective")
    d = f.components[divisor]
    if d.is_constant() and not d.is_zero():
        c = d.coefficient((0,) * f.num_vars)
        rest = tuple(p * (1 / c) for i, p in enumerate(f.components) if i != divisor)
        return PolyMap(f.num_vars, rest, "affine", f.name, f.variables)
    ball = domain or DomainBall.unit(f.num_vars)
    # zero sets have measure zero, so the center is tried before random samples
    probes = [ball.center] + [sample_point(_rng(seed, 99, t), ball) for t in range(samples)]
    for p in probes:
        if d(p) == 0:
            raise ConversionError(f"divisor coordinate vanishes at {p}: dehomogenization unsound")
    raise ConversionError("divisor coordinate is not constant; the affine map would not be polynomial")
