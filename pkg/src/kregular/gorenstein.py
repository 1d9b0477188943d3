"""Apolarity and dimension bookkeeping for punctual Gorenstein Hilbert schemes.

Operators ``alpha_i`` act on polynomials as ``d/dx_i``; a polynomial ``f``
determines the local Artin Gorenstein algebra ``S / ann(f)`` whose length is
the dimension of the space of all partials of ``f``.

The negligibility audit compares, for each admissible Hilbert function and
symmetric decomposition of length ``k``, the dimension of the corresponding
family in ``P^m`` against the dimension ``(k-1)(m-1)`` of the alignable locus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import (CapExceededError, ConstraintError, InhomogeneousHFError,
                     UnsupportedSocleError, ZeroPolynomialError)
from .exactmath import RationalMatrix, kernel_basis, rank, rref
from .poly import Polynomial, contract, deglex_key, monomials, monomials_upto

ENUMERATION_CAP = 16


# -- linear algebra on polynomial spans -----------------------------------

def _columns(num_vars: int, degree: int) -> list[tuple[int, ...]]:
    # deglex-descending, so echelon rows lead with their highest term
    return sorted(monomials_upto(num_vars, max(degree, 0)), key=deglex_key, reverse=True)


def _vector(p: Polynomial, index: dict) -> list:
    v = [0] * len(index)
    for e, c in p.terms.items():
        v[index[e]] = c
    return v


def _poly(num_vars: int, cols: list, v) -> Polynomial:
    return Polynomial(num_vars, {e: c for e, c in zip(cols, v) if c})


def _echelon(num_vars: int, cols: list, polys: list[Polynomial]) -> list[Polynomial]:
    """Reduced echelon basis of the span of ``polys``."""
    if not polys:
        return []
    index = {e: i for i, e in enumerate(cols)}
    rows, _ = rref(RationalMatrix.from_rows([_vector(p, index) for p in polys], cols=len(cols)))
    return [_poly(num_vars, cols, r) for r in rows]


def _complement(num_vars: int, cols: list, span: list[Polynomial], new: list[Polynomial]) -> list[Polynomial]:
    """Echelon basis of a complement of ``span`` inside ``span + new``."""
    index = {e: i for i, e in enumerate(cols)}
    base, piv = rref(RationalMatrix.from_rows([_vector(p, index) for p in span], cols=len(cols))) \
        if span else ([], [])
    residues = []
    for p in new:
        v = _vector(p, index)
        for row, c in zip(base, piv):
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        if any(v):
            residues.append(_poly(num_vars, cols, v))
    return _echelon(num_vars, cols, residues)


# -- apolarity ------------------------------------------------------------

def catalecticant(f: Polynomial, n: int) -> RationalMatrix:
    """Matrix of ``alpha^beta -> alpha^beta ⌟ f`` for ``|beta| = n``.

    Rows follow ``monomials(m, n)``; columns are all monomials of degree at
    most ``deg f - n`` in ascending degree.
    """
    if f.is_zero():
        raise ZeroPolynomialError("catalecticant of the zero polynomial")
    m = f.num_vars
    cols = monomials_upto(m, max(f.degree - n, 0))
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for b in monomials(m, n):
        g = contract(Polynomial.monomial(b), f)
        rows.append(_vector(g, index) if not g.is_zero() else [0] * len(cols))
    return RationalMatrix.from_rows(rows, cols=len(cols))


@dataclass(frozen=True)
class PartialsSpace:
    """Basis of ``S ⌟ f`` split by derivative order.

    ``levels[n]`` extends the span of the earlier levels by order-``n``
    partials; for homogeneous ``f`` it is a basis of all order-``n`` partials.
    """

    levels: tuple[tuple[Polynomial, ...], ...]

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self.levels)

    @property
    def dimension(self) -> int:
        return sum(self.dimensions)

    @property
    def basis(self) -> list[Polynomial]:
        return [p for lv in self.levels for p in lv]


def partials_space(f: Polynomial) -> PartialsSpace:
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no apolar algebra")
    m, s = f.num_vars, f.degree
    cols = _columns(m, s)
    levels = []
    span: list[Polynomial] = []
    for n in range(s + 1):
        order_n = [contract(Polynomial.monomial(b), f) for b in monomials(m, n)]
        new = _complement(m, cols, span, [g for g in order_n if not g.is_zero()])
        levels.append(tuple(new))
        span += new
    return PartialsSpace(tuple(levels))


def _filtration_dims(f: Polynomial) -> list[int]:
    """``dim (m^n ⌟ f)`` for n = 0..deg f + 1 (span of partials of order >= n)."""
    m, s = f.num_vars, f.degree
    cols = _columns(m, s)
    dims = [0] * (s + 2)
    span: list[Polynomial] = []
    for n in range(s, -1, -1):
        order_n = [contract(Polynomial.monomial(b), f) for b in monomials(m, n)]
        span += _complement(m, cols, span, [g for g in order_n if not g.is_zero()])
        dims[n] = len(span)
    return dims


@dataclass(frozen=True)
class HilbertProfile:
    hilbert_function: tuple[int, ...] | None
    socle_degree: int
    length: int
    embedding_dim: int

    def to_json(self) -> dict:
        return {"hilbert_function": list(self.hilbert_function) if self.hilbert_function else None,
                "socle_degree": self.socle_degree, "length": self.length,
                "embedding_dim": self.embedding_dim}


def apolar_profile(f: Polynomial, homogeneous: bool | None = None) -> HilbertProfile:
    """Invariants of the apolar algebra of ``f``.

    The Hilbert function is produced only for homogeneous ``f`` (where it is
    the sequence of catalecticant ranks).  Pass ``homogeneous=False`` to get
    length, socle degree and embedding dimension of an inhomogeneous ``f``.
    """
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no apolar algebra")
    if homogeneous is None:
        homogeneous = f.is_homogeneous()
    s = f.degree
    if homogeneous:
        if not f.is_homogeneous():
            raise InhomogeneousHFError("Hilbert function requested for an inhomogeneous dual generator")
        h = tuple(rank(catalecticant(f, n)) for n in range(s + 1))
        return HilbertProfile(h, s, sum(h), h[1] if s >= 1 else 0)
    dims = _filtration_dims(f)
    return HilbertProfile(None, s, dims[0], dims[1] - dims[2] if s >= 1 else 0)


def _operators_upto(m: int, n: int, homogeneous: bool) -> list[tuple[int, ...]]:
    return monomials(m, n) if homogeneous else monomials_upto(m, n)


def annihilator_generators(f: Polynomial, max_degree: int | None = None) -> list[Polynomial]:
    """Generators of ``ann(f)`` up to ``max_degree`` (default ``deg f + 1``).

    For homogeneous ``f`` the result is a minimal homogeneous generating set
    in those degrees.  For inhomogeneous ``f``, degree ``n`` contributes
    operators of degree <= n that kill ``f`` and are not already in the span
    of multiples of earlier generators.  Each generator is normalized to a
    leading coefficient 1 in deglex order.
    """
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no annihilator to present")
    if max_degree is None:
        max_degree = f.degree + 1
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    m = f.num_vars
    homog = f.is_homogeneous()
    gens: list[Polynomial] = []
    for n in range(1, max_degree + 1):
        ops = _operators_upto(m, n, homog)
        images = [contract(Polynomial.monomial(b), f) for b in ops]
        cols = _columns(m, f.degree)
        index = {e: i for i, e in enumerate(cols)}
        mat = RationalMatrix.from_rows([_vector(g, index) for g in images], cols=len(cols))
        kern = kernel_basis(mat.transpose())
        kernel_ops = [Polynomial(m, {b: c for b, c in zip(ops, v) if c}) for v in kern]
        # multiples of earlier generators that stay within the current degree bound
        ideal = []
        for g in gens:
            gd = g.degree
            shifts = monomials(m, n - gd) if homog else monomials_upto(m, n - gd)
            ideal += [g * Polynomial.monomial(e) for e in shifts]
        op_cols = _columns(m, n)
        gens += _complement(m, op_cols, ideal, kernel_ops)
    return gens


def operator_names(variables) -> tuple[str, ...]:
    return tuple(f"D{v}" for v in variables)


# -- dimension formulas ---------------------------------------------------

def expected_dimension(k: int, m: int) -> int:
    """Dimension ``(k-1)(m-1)`` of the alignable locus of length-k schemes at a point of P^m."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    return (k - 1) * (m - 1)


def compressed_dimension(s: int, m: int) -> tuple[int, int]:
    """(length, parameter dimension) of compressed algebras of socle degree 2 or 3 in m variables."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if s == 2:
        return m + 2, comb(m + 2, 2) - (m + 2)
    if s == 3:
        return 2 * m + 2, comb(m + 3, 3) - (2 * m + 2)
    raise UnsupportedSocleError(f"closed form only for socle degree 2 or 3, got {s}")


def socle4_constraint_violation(a: int, b: int, c: int) -> str | None:
    if a < 1:
        return "a >= 1"
    if b < 1:
        return "b >= 1"
    if c < 0:
        return "c >= 0"
    if b > comb(a + 1, 2):
        return "b <= C(a+1, 2)"
    if not (b > 2 or (a == b == 1) or (a == b == 2)):
        return "Macaulay growth: b > 2 or a = b = 1 or a = b = 2"
    return None


def socle4_param_dim(a: int, b: int, c: int) -> tuple[int, int, int]:
    """(k, m, upper bound on the parameter dimension) for decomposition
    ``(1, a, b, a, 1) + (0, c, c, 0)``."""
    bad = socle4_constraint_violation(a, b, c)
    if bad:
        raise ConstraintError(f"(a={a}, b={b}, c={c}) violates {bad}")
    k = 2 + 2 * a + 2 * c + b
    return k, a + c, comb(a + 3, 4) + a * c + comb(a + c + 3, 3) - k


def lifted_dimension(dim_e: int, k: int, e: int, m: int) -> int:
    """Dimension in P^m of a family of embedding dimension e having dimension dim_e in P^e."""
    return dim_e + (m - e) * (k - 1)


# -- symmetric decompositions ---------------------------------------------

@dataclass(frozen=True)
class SymmetricDecomposition:
    socle_degree: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.rows))

    @property
    def length(self) -> int:
        return sum(map(sum, self.rows))

    @property
    def embedding_dim(self) -> int:
        h = self.hilbert_function
        return h[1] if len(h) > 1 else 0

    @property
    def top_row(self) -> tuple[int, ...] | None:
        return self.rows[-1] if self.socle_degree >= 2 else None

    def row_symmetric(self, i: int) -> bool:
        s, row = self.socle_degree, self.rows[i]
        return (all(row[n] == 0 for n in range(s + 1 - i, s + 1))
                and all(row[s - i - n] == row[n] for n in range(s - i + 1)))

    def to_json(self) -> dict:
        return {"socle_degree": self.socle_degree, "rows": [list(r) for r in self.rows],
                "hilbert_function": list(self.hilbert_function)}


def _symmetric_rows(s: int, i: int, budget: int):
    """Yield (row, weight) for row i of a decomposition with socle degree s."""
    width = s - i
    first = 1 if i == 0 else 0
    free = list(range(1, width // 2 + 1)) if width >= 2 else []
    base_weight = 2 * first if width > 0 else first

    def rec(pos: int, vals: list[int], weight: int):
        if pos == len(free):
            row = [0] * (s + 1)
            row[0] = first
            row[width] = first
            for n, v in zip(free, vals):
                row[n] = v
                row[width - n] = v
            yield tuple(row), weight
            return
        n = free[pos]
        mult = 1 if 2 * n == width else 2
        lo = 1 if i == 0 else 0
        v = lo
        while weight + mult * v <= budget:
            yield from rec(pos + 1, vals + [v], weight + mult * v)
            v += 1

    if base_weight <= budget:
        yield from rec(0, [], base_weight)


def enumerate_decompositions(k: int, min_socle_degree: int = 0, min_embdim: int = 0,
                             top_row_zero: bool = False,
                             max_embdim: int | None = None) -> list[SymmetricDecomposition]:
    """All symmetric decompositions of total length k meeting the filters.

    Rows satisfy the support and symmetry conditions with ``Delta_0`` strictly
    positive on ``[0, s]``.  ``top_row_zero`` keeps only those with
    ``Delta_{s-2} = 0``; it is vacuous for s <= 2, where that row is
    ``Delta_0`` itself or absent.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > ENUMERATION_CAP:
        raise CapExceededError(f"enumeration is capped at k <= {ENUMERATION_CAP}")
    out: list[SymmetricDecomposition] = []

    def keep(d: SymmetricDecomposition) -> bool:
        e = d.embedding_dim
        return (d.socle_degree >= min_socle_degree and e >= min_embdim
                and (max_embdim is None or e <= max_embdim))

    # socle degree 0 and 1 have the single row Delta_0 and no top row to filter
    for d in (SymmetricDecomposition(0, ((1,),)), SymmetricDecomposition(1, ((1, 1),))):
        if d.length == k and keep(d):
            out.append(d)
    for s in range(max(2, min_socle_degree), k):
        nrows = s - 1

        def rec(i: int, rows: list, used: int):
            if i == nrows:
                d = SymmetricDecomposition(s, tuple(rows))
                if used == k and keep(d):
                    out.append(d)
                return
            for row, w in _symmetric_rows(s, i, k - used):
                if i == nrows - 1 and top_row_zero and s >= 3 and w:
                    continue
                rec(i + 1, rows + [row], used + w)

        rec(0, [], 0)
    return out


# -- negligibility audit --------------------------------------------------

@dataclass(frozen=True)
class AuditCase:
    case: str
    params: dict
    dimension: int | None
    expected: int
    verdict: str  # ok | exceeds | uncovered | inadmissible
    exact: bool = False

    def to_json(self) -> dict:
        return {"case": self.case, "params": self.params, "dimension": self.dimension,
                "expected": self.expected, "verdict": self.verdict, "exact": self.exact}


@dataclass
class NegligibilityReport:
    k: int
    m: int
    expected: int
    cases: list[AuditCase] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if any(c.verdict == "exceeds" and c.exact for c in self.cases):
            return "NOT_NEGLIGIBLE"
        if any(c.verdict in ("exceeds", "uncovered") for c in self.cases):
            return "INCONCLUSIVE"
        return "NEGLIGIBLE"

    @property
    def witnesses(self) -> list[AuditCase]:
        return [c for c in self.cases if c.verdict in ("exceeds", "uncovered")]

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "expected": self.expected, "verdict": self.verdict,
                "cases": [c.to_json() for c in self.cases]}


def _compare(case: str, params: dict, dim: int, expected: int, exact: bool) -> AuditCase:
    return AuditCase(case, params, dim, expected, "ok" if dim <= expected else "exceeds", exact)


@lru_cache(maxsize=None)
def _audit_verdict(k: int, m: int) -> str:
    return negligibility_audit(k, m).verdict


def negligibility_audit(k: int, m: int) -> NegligibilityReport:
    """Check every Hilbert function / decomposition of length k against (k-1)(m-1).

    Each decomposition is settled by the first rule that applies:

    ``s <= 1``           apolar algebra of a linear form: aligned
    ``embdim <= 2``      every finite scheme in a surface is alignable
    ``s = 2``            compressed algebras ``(1, e, 1)``
    ``s >= 3, q > 0``    ``Delta_{s-2} = (0, q, 0)`` reduces to length ``k - q``
    ``s = 3``            compressed algebras ``(1, e, e, 1)``
    ``s = 4``            parameter count for ``(1,a,b,a,1) + (0,c,c,0)``
    ``s >= 5``           no formula: reported as uncovered
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    exp = expected_dimension(k, m)
    report = NegligibilityReport(k, m, exp)
    for d in enumerate_decompositions(k, max_embdim=m):
        s, e, h = d.socle_degree, d.embedding_dim, d.hilbert_function
        params = {"H": list(h), "rows": [list(r) for r in d.rows], "embdim": e}
        if s <= 1:
            report.cases.append(AuditCase("aligned (socle degree <= 1)", params, exp, exp, "ok", True))
        elif e <= 2:
            report.cases.append(AuditCase("alignable (embedding dimension <= 2)", params, exp, exp, "ok", True))
        elif s == 2:
            _, dim_e = compressed_dimension(2, e)
            report.cases.append(_compare("compressed, socle degree 2", params,
                                         lifted_dimension(dim_e, k, e, m), exp, True))
        elif d.rows[-1][1] > 0:
            q = d.rows[-1][1]
            sub = _audit_verdict(k - q, m)
            report.cases.append(AuditCase(f"square reduction q={q} to length {k - q}", params,
                                          exp if sub == "NEGLIGIBLE" else None, exp,
                                          "ok" if sub == "NEGLIGIBLE" else "uncovered"))
        elif s == 3:
            _, dim_e = compressed_dimension(3, e)
            report.cases.append(_compare("compressed, socle degree 3", params,
                                         lifted_dimension(dim_e, k, e, m), exp, True))
        elif s == 4:
            a, b, c = d.rows[0][1], d.rows[0][2], d.rows[1][1]
            params.update(a=a, b=b, c=c)
            if socle4_constraint_violation(a, b, c):
                report.cases.append(AuditCase("socle degree 4, not a Gorenstein Hilbert function",
                                              params, None, exp, "inadmissible"))
            else:
                _, _, dim_e = socle4_param_dim(a, b, c)
                report.cases.append(_compare("socle degree 4 parameter count", params,
                                             lifted_dimension(dim_e, k, e, m), exp, False))
        else:
            report.cases.append(AuditCase(f"socle degree {s}, embedding dimension {e}: no formula",
                                          params, None, exp, "uncovered"))
    return report
