import pytest
from hypothesis import given, settings

from germlab.expr import MPoly, derive, parse
from germlab.grading import (NotWeightedHomogeneous, WeightSystem, detect_weights,
                             graded_basis, is_w_homogeneous, orient, wdegree)
from germlab.verdict import corpus
from strategies import weighted_families


def test_hp_weights():
    w = detect_weights(parse("x^3 + y^6 - 3*t^2*x*y^4"))
    assert (w.weights, w.degree, w.homogeneous) == ((2, 1), 6, False)


def test_whitney_is_homogeneous():
    w = detect_weights(parse("x^3*y - (1+t)*x^2*y^2 + t*x*y^3"))
    assert w.weights == (1, 1) and w.degree == 4 and w.homogeneous


def test_three_variables():
    w = detect_weights(parse("x^4 + y^4 + z^5 + t*x^2*y^2"))
    assert w.weights == (5, 5, 4) and w.degree == 20 and w.vars == ("x", "y", "z")


def test_ambiguous_monomial():
    w = detect_weights(parse("x*y^2"))
    assert w.ambiguous and w.weights == (1, 1) and w.degree == 3


@pytest.mark.parametrize("text", ["x^2 + y^3 + x*y", "x + 1", "t"])
def test_not_weighted_homogeneous(text):
    with pytest.raises(NotWeightedHomogeneous):
        detect_weights(parse(text))


def test_zero_polynomial():
    with pytest.raises(ValueError):
        detect_weights(MPoly.const(0))


def test_wdegree():
    assert wdegree((1, 4), WeightSystem((2, 1), 6)) == 6
    assert wdegree((0, 0), WeightSystem((2, 1), 6)) == 0
    assert wdegree((2, 2, 0), WeightSystem((5, 5, 4), 20, ("x", "y", "z"))) == 20
    with pytest.raises(ValueError):
        wdegree((1, 2, 3), WeightSystem((2, 1), 6))


def test_graded_basis():
    w = WeightSystem((2, 1), 6)
    assert set(graded_basis(w, 6).monomials) == {(3, 0), (2, 2), (1, 4), (0, 6)}
    assert graded_basis(w, 1).monomials == [(0, 1)]
    assert graded_basis(w, 0).monomials == [(0, 0)]


def test_orient_swaps_when_y_is_heavier():
    F = parse("y^3 + (1+t)*x^7")
    G, w, swapped = orient(F, detect_weights(F))
    assert swapped and w.weights == (7, 3) and G == parse("x^3 + (1+t)*y^7")


def test_weight_system_validation():
    with pytest.raises(ValueError):
        WeightSystem((4, 2), 8)
    with pytest.raises(ValueError):
        WeightSystem((0, 1), 3)


def _euler(F, w):
    return sum((MPoly.var(v) * derive(F, v) * wi for v, wi in zip(w.vars, w.weights)),
               MPoly.const(0))


@pytest.mark.parametrize("spec", corpus(), ids=lambda s: s.name)
def test_euler_identity_on_corpus(spec):
    w = detect_weights(spec.F)
    assert _euler(spec.F, w) == spec.F * w.degree


@settings(max_examples=200, deadline=None)
@given(weighted_families())
def test_euler_identity_random(fam):
    F, weights, d = fam
    w = detect_weights(F)
    assert (w.weights, w.degree) == (weights, d)
    assert is_w_homogeneous(F, w, d)
    assert _euler(F, w) == F * d
