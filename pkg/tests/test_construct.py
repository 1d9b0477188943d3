import warnings
from fractions import Fraction

import pytest

from kregular.construct import (FIXTURE_NAMES, construct_k_regular, default_target, paper_example,
                                projected_veronese)
from kregular.errors import BudgetExhaustedError, InfeasibleWarning, UnknownExampleError
from kregular.exactmath import rank
from kregular.poly import format_poly
from kregular.regularity import DomainBall, check_regularity, evaluation_matrix


def comps(name):
    f = paper_example(name)
    return [format_poly(c, f.variables) for c in f.components]


def test_fixture_components():
    assert comps("fourreg-2-7") == ["1", "s", "t", "s^2", "s*t", "-s^3 + t^2", "t^3"]
    assert comps("fivereg-2-9") == ["1", "s", "t", "s^2", "s*t", "t^2", "t^3", "-t^4 + s^3", "s^4"]
    assert comps("fourreg-3-10") == ["1", "t", "s", "u", "s*t", "s*u", "s^2 - t*u", "-s^3 + t^2",
                                     "-t^3 + u^2", "u^3"]
    assert comps("vandermonde(4)") == ["1", "t", "t^2", "t^3"] == comps("vandermonde-4")
    assert comps("threereg-2") == ["1", "t1", "t1^2", "t2", "t2^2"]


def test_unknown_fixture():
    with pytest.raises(UnknownExampleError):
        paper_example("fourreg-9-9")
    with pytest.raises(UnknownExampleError):
        paper_example("vandermonde-0")
    assert "fourreg-2-7" in FIXTURE_NAMES


def test_default_target():
    assert default_target(1, 4) == 3
    assert default_target(2, 4) == 6
    assert default_target(3, 10) == 35


def test_projection_keeps_constant_and_is_deterministic():
    a = projected_veronese(2, 4, 6, seed=5)
    b = projected_veronese(2, 4, 6, seed=5)
    assert a.components == b.components
    assert len(a) == 7 and a.components[0] == 1
    assert a.components != projected_veronese(2, 4, 6, seed=6).components


def test_construct_vandermonde_equivalent():
    res = construct_k_regular(1, 4, 3, seed=0, trials=100)
    assert len(res.map) == 4 and res.report.passed and res.report.k == 4
    nodes = [(Fraction(i, 3),) for i in range(-2, 2)]
    assert rank(evaluation_matrix(res.map, nodes)) == 4


def test_construct_reverifies_with_stored_seed():
    res = construct_k_regular(2, 3, 4, seed=2, trials=60)
    again = check_regularity(res.map, 3, res.report.domain, 60, res.report.seed, stop_at_first=True)
    assert again.to_json() == res.report.to_json()
    assert construct_k_regular(2, 3, 4, seed=2, trials=60).to_json() == res.to_json()


def test_infeasible_target_warns_and_exhausts():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        with pytest.raises(BudgetExhaustedError) as exc:
            construct_k_regular(1, 4, 2, budget=2, trials=40)
    assert any(issubclass(w.category, InfeasibleWarning) for w in caught)
    assert exc.value.best_report is not None
    assert exc.value.best_report.verdict == "COUNTEREXAMPLE"


def test_constructed_radius_default_is_local():
    res = construct_k_regular(1, 2, 1, trials=20)
    assert res.report.domain == DomainBall.unit(1, Fraction(1, 8))
