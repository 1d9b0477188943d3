from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kregular.construct import paper_example
from kregular.errors import ArityError, ConversionError, DomainError
from kregular.exactmath import rank
from kregular.poly import Polynomial, PolyMap, parse_poly, veronese_map
from kregular.regularity import (Counterexample, DomainBall, PointConfiguration, check_jet,
                                 check_regularity, convert, evaluation_matrix, grid_shapes,
                                 jet_matrix, linearized, verify_counterexample)

q = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))


def test_vandermonde_is_k_regular_small_budget():
    f = paper_example("vandermonde-4")
    rep = check_regularity(f, 4, budget=50)
    assert rep.passed
    assert [s.name for s in rep.strategies] == ["random", "grid", "cluster", "jet"]
    # m = 1 has no product configurations
    assert rep.strategies[1].trials == 0


def test_vandermonde_fails_one_beyond():
    rep = check_regularity(paper_example("vandermonde-3"), 4, budget=5, stop_at_first=True)
    assert rep.verdict == "COUNTEREXAMPLE"
    assert verify_counterexample(paper_example("vandermonde-3"), rep.counterexample)


def test_grid_certificate_for_coordinate_projection():
    f = paper_example("monomial-nonreg-2-7")
    rep = check_regularity(f, 4, budget=10, strategies=("grid",), stop_at_first=True)
    cex = rep.counterexample
    assert cex.strategy == "grid" and cex.trial == 0
    assert cex.kernel_vector == (1, -1, -1, 1)
    assert verify_counterexample(f, cex)
    forged = Counterexample(cex.strategy, cex.trial, cex.points, (1, 1, -1, 1))
    assert not verify_counterexample(f, forged)


def test_jet_detects_tangential_failure():
    f = PolyMap(1, (Polynomial.constant(1, 1), parse_poly("t^2", ("t",))), "linear", "square", ("t",))
    out = check_jet(f, 2, (0,), arc_directions=3)
    assert not out.passed and out.trials == 1
    assert verify_counterexample(f, out.counterexample, 2)
    assert check_jet(f, 2, (1,), arc_directions=20).passed


def test_jet_matrix_matches_taylor_expansion():
    f = paper_example("fourreg-2-7")
    base = (Fraction(1, 3), Fraction(-1, 2))
    arc = ((1, 2), (Fraction(1, 2), 0), (3, -1))
    t = sympy.Symbol("t")
    gamma = [base[i] + sum(arc[j][i] * t ** (j + 1) for j in range(3)) for i in range(2)]
    mat = jet_matrix(f, base, arc, 4)
    for col, comp in enumerate(f.components):
        expr = sum(sympy.Rational(c.numerator, c.denominator) * gamma[0] ** e[0] * gamma[1] ** e[1]
                   for e, c in comp.terms.items())
        series = sympy.Poly(sympy.expand(expr), t).all_coeffs()[::-1] + [0] * 4
        for i in range(4):
            assert mat[i, col] == Fraction(str(series[i]))


def test_evaluation_matrix_rows_are_values():
    f = paper_example("threereg-2")
    pts = ((Fraction(1, 2), 0), (1, 1), (0, Fraction(-1, 3)))
    mat = evaluation_matrix(f, PointConfiguration(pts))
    assert mat.row(0) == (1, Fraction(1, 2), Fraction(1, 4), 0, 0)
    with pytest.raises(ArityError):
        evaluation_matrix(f, [(1, 2, 3)])


def test_domain_and_configuration_validation():
    with pytest.raises(DomainError):
        DomainBall.unit(2, 0)
    with pytest.raises(ValueError):
        PointConfiguration(((0, 0), (0, 0)))
    with pytest.raises(ArityError):
        check_regularity(paper_example("threereg-2"), 2, DomainBall.unit(3), budget=1)
    assert not DomainBall.unit(1).contains((1,))


def test_grid_shapes():
    assert grid_shapes(1, 4) == []
    assert grid_shapes(2, 4)[0] == ("grid", 2, 2)
    assert ("cube", 3) in grid_shapes(3, 8)
    assert grid_shapes(2, 3) == [("line", 3)]


def test_determinism_and_parallel_equivalence():
    f = paper_example("fourreg-2-7")
    a = check_regularity(f, 4, budget=30, seed=3).to_json()
    b = check_regularity(f, 4, budget=30, seed=3).to_json()
    c = check_regularity(f, 4, budget=30, seed=3, workers=2).to_json()
    assert a == b == c


def test_all_trials_counts_failures():
    rep = check_regularity(paper_example("monomial-nonreg-2-7"), 4, budget=20, strategies=("grid",))
    s = rep.strategies[0]
    assert s.trials == 20 and s.failures >= 1


def test_linearized_kinds():
    f = PolyMap(1, (parse_poly("t", ("t",)), parse_poly("t^2", ("t",))), "affine", "", ("t",))
    lin = linearized(f)
    assert lin.kind == "linear" and lin.components[0] == 1
    proj = veronese_map(1, 3, "projective")
    chart = linearized(proj)
    assert chart.num_vars == 1 and len(chart) == 4
    assert check_regularity(proj, 4, budget=20).passed


def test_convert_directions():
    f = PolyMap(1, (parse_poly("t", ("t",)),), "affine", "", ("t",))
    assert convert(f, "affine", "linear").components[0] == 1
    g = convert(f, "affine", "projective")
    back = convert(g, "projective", "affine", divisor=0)
    assert back.components == f.components
    with pytest.raises(ConversionError):
        convert(g.with_kind("linear"), "linear", "affine")
    with pytest.raises(ConversionError, match="unsound"):
        convert(g, "projective", "affine", divisor=1)
    h = PolyMap(1, (parse_poly("t^2 + 1", ("t",)), parse_poly("t", ("t",))), "projective", "", ("t",))
    with pytest.raises(ConversionError, match="would not be polynomial"):
        convert(h, "projective", "affine", divisor=0)


@settings(max_examples=60, deadline=None)
@given(st.lists(q.filter(bool), min_size=5, max_size=5), st.integers(0, 50))
def test_component_scaling_invariance(scales, seed):
    f = paper_example("threereg-2")
    g = PolyMap(2, tuple(c * s for c, s in zip(f.components, scales)), "linear", f.name)
    a = check_regularity(f, 4, budget=3, seed=seed, strategies=("grid", "random"))
    b = check_regularity(g, 4, budget=3, seed=seed, strategies=("grid", "random"))
    assert a.verdict == b.verdict
    assert [(s.trials, s.failures) for s in a.strategies] == [(s.trials, s.failures) for s in b.strategies]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(q, q), min_size=4, max_size=4, unique=True), st.data())
def test_point_subset_monotonicity(pts, data):
    f = paper_example("fourreg-2-7")
    full = rank(evaluation_matrix(f, pts))
    sub = data.draw(st.lists(st.sampled_from(pts), min_size=1, max_size=3, unique=True))
    r = rank(evaluation_matrix(f, sub))
    assert r <= full
    if full == 4:
        assert r == len(sub)
