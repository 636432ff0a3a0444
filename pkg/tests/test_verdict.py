from fractions import Fraction as Q

import pytest

from germlab.expr import GaussRat, MPoly, parse
from germlab.grading import detect_weights, orient
from germlab.verdict import (ANALYTICALLY_TRIVIAL, FAILS_K, INCONCLUSIVE, NOT_TRIVIAL_TANGENT,
                             Domain, FamilySpec, InconsistentFamily, analyze_family, corpus,
                             parse_domain, random_samples, reduced_path_check)


def analyze(text, ts, domain=""):
    return analyze_family(FamilySpec.from_text(text, t_samples=list(ts), domain_note=domain))


def family(text):
    F = parse(text)
    G, w, _ = orient(F, detect_weights(F))
    return G, w


class TestReducedPath:
    def test_equal_k_control(self):
        F, w = family("x^3 + 3*t*x*y^4")
        r = reduced_path_check(F, w, Q(1, 2), Q(1, 2))
        assert r.status == "success" and r.residual.is_zero() and r.u.is_zero()

    def test_not_squarefree(self):
        F, w = family("x^3 + (1+t)*y^7")
        assert reduced_path_check(F, w, Q(1, 7), 0).status == "not_applicable"

    def test_no_common_k(self):
        F, w = family("x^3 + y^6 - 3*t^2*x*y^4")
        assert reduced_path_check(F, w, None, Q(1, 4)).status == "not_applicable"

    def test_nonzero_residual_divisible(self):
        # R = F_t - k y F_y with a wrong k is a multiple of F_x only by accident
        F, w = family("x^3 + 3*t*x*y^4")
        r = reduced_path_check(F, w, Q(1, 3), Q(1, 2))
        assert r.status == "failed" and not r.residual.is_zero()


class TestPipeline:
    def test_hp(self):
        a = analyze("x^3 + y^6 - 3*t^2*x*y^4", [Q(1, 4), Q(1, 3)], "0<|t|<1/2")
        v = a.verdict
        assert v.kind == FAILS_K and v.t0 == Q(1, 4)
        assert v.witness[2:] == (Q(-2, 31), Q(2, 33))
        assert "not strongly bi-Lipschitz trivial" in v.strong_bilipschitz

    def test_positive_control(self):
        a = analyze("x^3 + (1+t)*y^7", [0, 1])
        v = a.verdict
        assert v.kind == ANALYTICALLY_TRIVIAL and v.exceptional_t == [-1]
        assert v.certificate.verify()
        assert any(kind == "exceptional" and t0 == -1 for kind, t0, _ in a.spot_checks)
        assert all(m for kind, _, m in a.spot_checks if kind == "random")

    def test_example(self):
        a = analyze("x^4 + y^4 + z^5 + t*x^2*y^2", [0, 1], "|t|<2")
        assert a.verdict.kind == NOT_TRIVIAL_TANGENT
        assert a.verdict.strong_bilipschitz.startswith("NOT EVALUATED")
        assert any("UNCHECKED" in f for f in a.footnotes)

    def test_whitney(self):
        a = analyze("x*y*(x-y)*(x-t*y)", [Q(1, 2)], "0<|t|<1")
        assert a.verdict.kind == INCONCLUSIVE
        assert "homogeneous" in a.verdict.reasons[0]

    def test_swapped_input(self):
        a = analyze("y^3 + x^6 - 3*t^2*y*x^4", [Q(1, 4)])
        assert a.swapped and a.verdict.kind == FAILS_K

    def test_axis_component_is_conditional(self):
        a = analyze("x^3*y + y^7 + t*x^2*y^3", [1, 2])
        assert all(s.polar.x_axis_order == 1 for s in a.samples if s.polar)
        assert a.verdict.kind == FAILS_K and a.verdict.conditional

    def test_zero_family(self):
        with pytest.raises(InconsistentFamily):
            analyze_family(FamilySpec(MPoly.const(0)))

    def test_samples_outside_domain_are_flagged(self):
        a = analyze("x^3 + y^6 - 3*t^2*x*y^4", [Q(3, 4)], "0<|t|<1/2")
        assert a.samples[0].in_domain is False
        assert any("outside" in f for f in a.footnotes)

    def test_random_samples_are_added(self):
        a = analyze("x^3 + y^6 - 3*t^2*x*y^4", [Q(1, 4)], "0<|t|<1/2")
        rnd = [s for s in a.samples if s.origin == "random"]
        assert len(rnd) == 3 and all(s.in_domain for s in rnd)

    def test_gaussian_sample(self):
        a = analyze("x^3 + y^6 - 3*t^2*x*y^4", [GaussRat(0, Q(1, 4))])
        assert a.samples[0].k is not None


class TestDomain:
    def test_forms(self):
        assert parse_domain("0<|t|<1/2") == Domain(Q(0), Q(1, 2), "0<|t|<1/2")
        assert parse_domain("|t| < 2").upper == 2
        assert parse_domain("0<|t|").lower == 0
        assert not parse_domain("t in U").understood

    def test_contains(self):
        d = parse_domain("0<|t|<1/2")
        assert d.contains(Q(1, 4)) and not d.contains(0) and not d.contains(Q(1, 2))
        assert d.contains(GaussRat(Q(1, 5), Q(1, 5)))

    def test_random_samples_deterministic(self):
        F = parse("x^3 + y^6 - 3*t^2*x*y^4")
        d = parse_domain("0<|t|<1/2")
        assert random_samples(F, d, 3) == random_samples(F, d, 3)
        assert all(d.contains(v) for v in random_samples(F, d, 3))


def test_corpus_contents():
    specs = {s.name: s for s in corpus()}
    assert specs["henry-parusinski"].domain_note == "0<|t|<1/2"
    assert specs["whitney"].domain_note == "0<|t|<1"
    assert specs["three-variable-example-k5"].F == parse("x^4 + y^4 + z^5 + t*x^2*y^2")
    assert len(specs) == 6


@pytest.mark.parametrize("spec", corpus(), ids=lambda s: s.name)
def test_determinism(spec):
    from germlab.report import analysis_document
    a = analysis_document(analyze_family(spec), {"expression": spec.text}).to_json()
    b = analysis_document(analyze_family(spec), {"expression": spec.text}).to_json()
    assert a == b
