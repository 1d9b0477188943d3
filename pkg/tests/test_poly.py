from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kregular.errors import ArityError, ParseError
from kregular.poly import (Polynomial, PolyMap, contract, evaluate, format_poly, monomials,
                           monomials_upto, parse_poly, polymap_from_lines, veronese_map)

X = ("x1", "x2", "x3")
coef = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def polys(draw, m=3, max_deg=4, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(m)]).filter(lambda e: sum(e) <= max_deg)
    terms = draw(st.dictionaries(exps, coef, max_size=max_terms))
    return Polynomial(m, terms)


def to_sympy(f: Polynomial, syms):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** k for s, k in zip(syms, e)])
                for e, c in f.terms.items()), sympy.Integer(0))


def test_contraction_identities():
    f = parse_poly("x1^2*x2^3", X)
    assert contract(parse_poly("x1*x2", X), f) == parse_poly("6*x1*x2^2", X)
    assert contract(parse_poly("x3^2", X), parse_poly("x1*x2*x3", X)).is_zero()


def test_monomial_counts_and_order():
    assert len(monomials(3, 4)) == comb(6, 2)
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_upto(2, 3)) == comb(5, 3)
    assert monomials_upto(2, 1) == [(0, 0), (1, 0), (0, 1)]


def test_veronese_sizes():
    v = veronese_map(2, 3)
    assert len(v) == comb(5, 3) and v.kind == "linear"
    assert v.components[0] == 1
    p = veronese_map(2, 3, "projective")
    assert len(p) == comb(5, 3) and p.source_projective


def test_parse_and_format():
    f = parse_poly("t^2 - s^3 + 1/2", ("s", "t"))
    assert format_poly(f, ("s", "t")) == "-s^3 + t^2 + 1/2"
    assert parse_poly("2*s*t - s*t", ("s", "t")) == parse_poly("s*t", ("s", "t"))
    assert parse_poly("t1 + t2", 2) == parse_poly("s + t", 2)
    assert format_poly(Polynomial.zero(2)) == "0"


@pytest.mark.parametrize("text,pos", [("1 + ", 4), ("x1 ^ 0", 5), ("3/0", 2), ("y", 0), ("1 # 2", 2), ("", 0),
                                      ("x1 x2", 3)])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_poly(text, X)
    assert exc.value.position == pos


def test_evaluate_and_arity():
    f = parse_poly("x1^2 + 3*x2 - 1", X)
    assert evaluate(f, (Fraction(1, 2), 1, 0)) == Fraction(9, 4)
    with pytest.raises(ArityError):
        evaluate(f, (1, 2))
    with pytest.raises(ArityError):
        PolyMap(2, (f,))


def test_degree_and_homogeneity():
    assert Polynomial.zero(2).degree == float("-inf")
    f = parse_poly("x1^2 + x2*x3", X)
    assert f.degree == 2 and f.is_homogeneous()
    assert not (f + 1).is_homogeneous()
    assert (f + 1).homogeneous_part(0) == 1


def test_polymap_from_lines_discovers_names():
    f = polymap_from_lines(["1", "s  # first coordinate", "", "s^2"])
    assert f.variables == ("s", "t") and len(f) == 3
    g = polymap_from_lines(["1", "t1", "t3^2"])
    assert g.num_vars == 3
    h = polymap_from_lines(["1", "t", "t^2"])
    assert h.variables == ("t",)


@settings(max_examples=1500, deadline=None)
@given(polys(), polys(max_deg=2, max_terms=3))
def test_contraction_matches_sympy_derivatives(f, op):
    syms = sympy.symbols("x1:4")
    expected = sympy.Integer(0)
    fs = to_sympy(f, syms)
    for e, c in op.terms.items():
        d = fs
        for s, k in zip(syms, e):
            if k:
                d = sympy.diff(d, s, k)
        expected += sympy.Rational(c.numerator, c.denominator) * d
    assert sympy.expand(to_sympy(contract(op, f), syms) - expected) == 0


@settings(max_examples=1000, deadline=None)
@given(polys(), polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3))
def test_contraction_composes_and_is_bilinear(f, a, b):
    assert contract(a * b, f) == contract(a, contract(b, f))
    assert contract(a + b, f) == contract(a, f) + contract(b, f)
    assert contract(a, f + f) == contract(a, f) * 2


@settings(max_examples=800, deadline=None)
@given(polys())
def test_format_parse_roundtrip(f):
    assert parse_poly(format_poly(f, X), X) == f


@settings(max_examples=500, deadline=None)
@given(polys(max_deg=3), polys(max_deg=3), st.tuples(coef, coef, coef))
def test_ring_operations_evaluate_pointwise(f, g, p):
    assert evaluate(f * g, p) == evaluate(f, p) * evaluate(g, p)
    assert evaluate(f - g, p) == evaluate(f, p) - evaluate(g, p)
    assert evaluate(f ** 2, p) == evaluate(f, p) ** 2
