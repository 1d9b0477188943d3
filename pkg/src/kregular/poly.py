"""Sparse multivariate polynomials over the rationals.

A :class:`Polynomial` maps exponent tuples to nonzero ``Fraction`` coefficients.
The same type represents differential operators: an operator polynomial in
``alpha_1..alpha_m`` acts on a polynomial in ``x_1..x_m`` with ``alpha_i`` read
as ``d/dx_i`` (see :func:`contract`).

Monomials are ordered by total degree, then lexicographically with the first
variable largest ("deglex").  Veronese coordinates and catalecticant rows use
ascending degree with lex-descending ties; formatted output lists terms in
deglex-descending order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .errors import ArityError, ParseError

Exponent = tuple[int, ...]

KINDS = ("affine", "linear", "projective")


def deglex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


def monomials(m: int, d: int) -> list[Exponent]:
    """All exponent vectors of total degree ``d`` in ``m`` variables, lex-descending."""
    out = []
    for combo in combinations_with_replacement(range(m), d):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_upto(m: int, d: int) -> list[Exponent]:
    """Exponents of degree 0..d, ascending degree, lex-descending within a degree."""
    return [e for j in range(d + 1) for e in monomials(m, j)]


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, object] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != num_vars:
                raise ArityError(f"exponent {e} has length {len(e)}, expected {num_vars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.num_vars = num_vars
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, c) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "Polynomial":
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, {tuple(e): 1})

    # -- basic properties -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> float | int:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in deglex-descending order."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise ArityError(f"polynomials in {self.num_vars} and {other.num_vars} variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.num_vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.num_vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.num_vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.num_vars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- evaluation -------------------------------------------------------
    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    """Exact value of ``f`` at a rational point."""
    if len(point) != f.num_vars:
        raise ArityError(f"point of length {len(point)} for polynomial in {f.num_vars} variables")
    pt = [Fraction(x) for x in point]
    # cache powers per variable
    maxdeg = [0] * f.num_vars
    for e in f.terms:
        for i, x in enumerate(e):
            if x > maxdeg[i]:
                maxdeg[i] = x
    pows = []
    for i, x in enumerate(pt):
        p = [Fraction(1)]
        for _ in range(maxdeg[i]):
            p.append(p[-1] * x)
        pows.append(p)
    total = Fraction(0)
    for e, c in f.terms.items():
        v = c
        for i, x in enumerate(e):
            if x:
                v *= pows[i][x]
        total += v
    return total


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def contract(op: Polynomial, f: Polynomial) -> Polynomial:
    """Apply the differential operator ``op`` (alpha_i = d/dx_i) to ``f``."""
    if op.num_vars != f.num_vars:
        raise ArityError(f"operator in {op.num_vars} variables applied to polynomial in {f.num_vars}")
    terms: dict[Exponent, Fraction] = {}
    for b, cb in op.terms.items():
        for g, cg in f.terms.items():
            if all(x >= y for x, y in zip(g, b)):
                coef = cb * cg
                for x, y in zip(g, b):
                    coef *= _falling(x, y)
                e = tuple(x - y for x, y in zip(g, b))
                terms[e] = terms.get(e, 0) + coef
    return Polynomial(f.num_vars, terms)


@dataclass(frozen=True)
class PolyMap:
    """An ordered tuple of polynomials in a common number of variables.

    ``kind`` records how regularity is read: ``linear`` (linear independence of
    images), ``affine`` (affine independence), or ``projective`` (components are
    homogeneous coordinates of the target).  A projective map whose components are
    all homogeneous of one positive degree is treated as defined on projective
    space, verified in the chart where the first variable equals 1.
    """

    num_vars: int
    components: tuple[Polynomial, ...]
    kind: str = "linear"
    name: str = ""
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        for c in self.components:
            if c.num_vars != self.num_vars:
                raise ArityError("components do not share num_vars")
        if not self.variables:
            object.__setattr__(self, "variables", default_variables(self.num_vars))
        elif len(self.variables) != self.num_vars:
            raise ArityError("variable names do not match num_vars")

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __call__(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(evaluate(c, point) for c in self.components)

    @property
    def source_projective(self) -> bool:
        if self.kind != "projective" or not self.components:
            return False
        degs = {sum(e) for c in self.components for e in c.terms}
        return len(degs) == 1 and next(iter(degs)) > 0

    def with_kind(self, kind: str, name: str | None = None) -> "PolyMap":
        return PolyMap(self.num_vars, self.components, kind, self.name if name is None else name,
                       self.variables)

    def formatted(self) -> list[str]:
        return [format_poly(c, self.variables) for c in self.components]


def default_variables(m: int) -> tuple[str, ...]:
    return tuple(f"t{i + 1}" for i in range(m))


ALIASES = {1: ("t",), 2: ("s", "t"), 3: ("s", "t", "u")}


def veronese_map(m: int, d: int, kind: str = "affine") -> PolyMap:
    """Veronese map of degree ``d``.

    ``projective``: all degree-``d`` monomials in ``m + 1`` variables.
    ``affine``: all monomials of degree <= ``d`` in ``m`` variables, constant first.
    """
    if m < 1 or d < 1:
        raise ValueError("veronese_map needs m >= 1 and d >= 1")
    if kind == "projective":
        comps = tuple(Polynomial.monomial(e) for e in monomials(m + 1, d))
        names = tuple(f"x{i}" for i in range(m + 1))
        return PolyMap(m + 1, comps, "projective", f"veronese-proj-{m}-{d}", names)
    if kind in ("affine", "linear"):
        comps = tuple(Polynomial.monomial(e) for e in monomials_upto(m, d))
        return PolyMap(m, comps, "linear", f"veronese-{m}-{d}")
    raise ValueError(f"unknown kind {kind!r}")


# -- text format ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(/))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = mt.start(mt.lastindex)
        kind = ("num", "name", "^", "*", "+", "-", "/")[mt.lastindex - 1]
        toks.append((kind, mt.group(mt.lastindex), start))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_poly(text: str, variables: Sequence[str] | int) -> Polynomial:
    """Parse a polynomial such as ``"1 + t1^2 - 3/2*t2^3"``.

    ``variables`` is an ordered name list, or an integer ``m`` meaning the
    canonical names ``t1..tm`` (plus the aliases ``s, t, u`` when m <= 3).
    """
    if isinstance(variables, int):
        m = variables
        index = {n: i for i, n in enumerate(default_variables(m))}
        for i, n in enumerate(ALIASES.get(m, ())):
            index.setdefault(n, i)
    else:
        m = len(variables)
        index = {n: i for i, n in enumerate(variables)}
    toks = _tokenize(text)
    i = 0
    terms: dict[Exponent, Fraction] = {}

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or tok[0]!r}", tok[2])
        i += 1
        return tok

    def factor(coef, exp):
        tok = peek()
        if tok[0] == "num":
            take("num")
            val = Fraction(int(tok[1]))
            if peek()[0] == "/":
                take("/")
                den = take("num")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                val /= int(den[1])
            return coef * val
        if tok[0] == "name":
            take("name")
            if tok[1] not in index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            power = 1
            if peek()[0] == "^":
                take("^")
                p = take("num")
                power = int(p[1])
                if power < 1:
                    raise ParseError("exponent must be >= 1", p[2])
            exp[index[tok[1]]] += power
            return coef
        raise ParseError(f"expected a number or variable, found {tok[1] or tok[0]!r}", tok[2])

    if peek()[0] == "end":
        raise ParseError("empty polynomial", 0)
    first = True
    while True:
        sign = Fraction(1)
        tok = peek()
        if tok[0] in ("+", "-"):
            take(tok[0])
            if tok[0] == "-":
                sign = -sign
        elif not first:
            raise ParseError(f"expected '+' or '-', found {tok[1] or tok[0]!r}", tok[2])
        exp = [0] * m
        coef = factor(sign, exp)
        while peek()[0] == "*":
            take("*")
            coef = factor(coef, exp)
        e = tuple(exp)
        terms[e] = terms.get(e, Fraction(0)) + coef
        first = False
        if peek()[0] == "end":
            break
    return Polynomial(m, terms)


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Polynomial, variables: Sequence[str] | None = None) -> str:
    """Canonical text: deglex-descending terms, lowest-terms coefficients."""
    names = tuple(variables) if variables else default_variables(f.num_vars)
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
        mag = abs(c)
        if not mono:
            body = _format_coef(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coef(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def polymap_from_lines(lines: Iterable[str], variables: Sequence[str] | int | None = None,
                       kind: str = "linear", name: str = "") -> PolyMap:
    """Build a map from one polynomial per line (blank lines and ``#`` comments skipped).

    Without explicit ``variables`` the names are discovered from the text: the
    canonical ``t1..tm`` family, or the single-letter aliases ``s, t, u``.
    """
    rows = [ln.split("#", 1)[0].strip() for ln in lines]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("map has no components")
    if variables is None:
        found = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", " ".join(rows)))
        indexed = [n for n in found if re.fullmatch(r"t\d+", n)]
        if found and found <= {"s", "t", "u"}:
            if found == {"t"}:
                variables = ALIASES[1]
            else:
                variables = ALIASES[2] if found <= {"s", "t"} else ALIASES[3]
        elif indexed:
            variables = default_variables(max(int(n[1:]) for n in indexed))
        elif not found:
            variables = ("t",)
        else:
            variables = tuple(sorted(found))
    if isinstance(variables, int):
        names = default_variables(variables)
    else:
        names = tuple(variables)
    comps = tuple(parse_poly(r, names) for r in rows)
    return PolyMap(len(names), comps, kind, name, names)
