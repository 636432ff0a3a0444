from fractions import Fraction as Q

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from germlab.expr import MPoly, derive, parse
from germlab.grading import WeightSystem, detect_weights, graded_basis, orient
from germlab.localalg import (NonIsolatedSingularity, at_t, graded_membership,
                              isolated_check, jacobian_gens, milnor, quotient_dimension,
                              tf_gens)
from strategies import small_rationals, weighted_families

x, y, z, t = (MPoly.var(v) for v in "xyzt")


def weights_of(text):
    F = parse(text)
    G, w, _ = orient(F, detect_weights(F))
    return G, w


class TestTF:
    def test_generators_in_order(self):
        F, w = weights_of("x^3 + (1+t)*y^7")
        gens = tf_gens(F, w)
        assert gens.gens == [3 * x ** 3, 3 * x ** 2 * y, 7 * (1 + t) * x * y ** 6,
                             7 * (1 + t) * y ** 7]
        assert gens.labels == ["x*F_x", "y*F_x", "x*F_y", "y*F_y"]
        assert gens.degrees == [21, 17, 25, 21]

    def test_single_variable(self):
        w = WeightSystem((1,), 1, ("x",))
        assert tf_gens(x, w).gens == [x]

    def test_three_variables(self):
        F, w = weights_of("x^4 + y^4 + z^5 + t*x^2*y^2")
        gens = tf_gens(F, w)
        assert len(gens.gens) == 9
        assert gens.gens[0] == 4 * x ** 4 + 2 * t * x ** 2 * y ** 2

    def test_requires_homogeneity(self):
        with pytest.raises(ValueError):
            tf_gens(x ** 2 + y ** 3, WeightSystem((2, 1), 4))


class TestMembership:
    def test_positive_control_certificate(self):
        F, w = weights_of("x^3 + (1+t)*y^7")
        cert = graded_membership(derive(F, "t"), tf_gens(F, w), w)
        assert cert.member and cert.verify()
        combo = {lab: m for lab, m in zip(cert.gens.labels, cert.multipliers) if m}
        assert list(combo) == ["y*F_y"]
        assert combo["y*F_y"] == MPoly.const(Q(1, 7))
        assert cert.denominator.to_mpoly() == t + 1
        assert cert.exceptional_t == [-1]

    def test_zero_target(self):
        F, w = weights_of("x^3 + (1+t)*y^7")
        cert = graded_membership(MPoly.const(0), tf_gens(F, w), w)
        assert cert.member and not any(cert.multipliers)

    def test_example_fails_generically_and_at_samples(self):
        F, w = weights_of("x^4 + y^4 + z^5 + t*x^2*y^2")
        res = graded_membership(derive(F, "t"), tf_gens(F, w), w)
        assert not res.member and res.residual
        for t0 in (0, 1, Q(1, 3)):
            Ft0 = at_t(F, t0)
            assert not graded_membership(x ** 2 * y ** 2, tf_gens(Ft0, w), w).member

    def test_target_must_be_homogeneous(self):
        F, w = weights_of("x^3 + y^7")
        with pytest.raises(ValueError):
            graded_membership(x + y, tf_gens(F, w), w)


class TestMilnor:
    @pytest.mark.parametrize("text,mu,codim", [
        ("x^3 + y^6", 10, 11),
        ("x*y*(x-y)*(x-2*y)", 9, 10),
        ("x^4 + y^4 + z^5", 36, 38),
        ("x^3 + y^7", 12, 13),
    ])
    def test_values(self, text, mu, codim):
        F, w = weights_of(text)
        m = milnor(F, w)
        assert (m.mu, m.orbit_codim) == (mu, codim)
        assert m.method_dimension == m.method_formula == mu
        assert sum(m.quotient_dims.values()) == mu

    def test_non_isolated(self):
        with pytest.raises(NonIsolatedSingularity):
            milnor(x ** 2 * y ** 2, WeightSystem((1, 1), 4))

    def test_needs_fixed_t(self):
        F, w = weights_of("x^3 + (1+t)*y^7")
        with pytest.raises(ValueError):
            milnor(F, w)

    def test_quotient_dimension_is_socle_symmetric(self):
        F, w = weights_of("x^3 + y^6")
        J = jacobian_gens(F, w)
        top = sum(w.degree - 2 * wi for wi in w.weights)
        dims = [quotient_dimension(J, w, e) for e in range(top + 1)]
        assert dims == dims[::-1]


class TestIsolated:
    def test_cases(self):
        F, w = weights_of("x^3 + y^6 - 3*t^2*x*y^4")
        assert isolated_check(at_t(F, Q(1, 4)), w)
        assert not isolated_check(x ** 2 * y ** 2, WeightSystem((1, 1), 4))
        G, w3 = weights_of("x^4 + y^4 + z^5 + t*x^2*y^2")
        assert isolated_check(at_t(G, 1), w3)
        assert not isolated_check(at_t(G, 2), w3)


@settings(max_examples=200, deadline=None)
@given(weighted_families(), st.data())
def test_certificate_resubstitution(fam, data):
    """Random combinations of TF generators are members with a valid certificate."""
    F, weights, d = fam
    w = WeightSystem(weights, d)
    gens = tf_gens(F, w)
    e = data.draw(st.sampled_from(sorted(set(gens.degrees))))
    target = MPoly.const(0)
    for g, dg in zip(gens.gens, gens.degrees):
        if dg > e:
            continue
        for m in graded_basis(w, e - dg).monomials:
            c = data.draw(small_rationals) + data.draw(small_rationals) * t
            target = target + g * MPoly.monomial(("x", "y"), m) * c
    cert = graded_membership(target, gens, w)
    assert cert.member
    assert cert.verify()
    assert cert.residual().is_zero()


@settings(max_examples=200, deadline=None)
@given(weighted_families())
def test_milnor_methods_agree(fam):
    F, weights, d = fam
    w = WeightSystem(weights, d)
    F0 = at_t(F, 0)
    assume(isolated_check(F0, w))
    m = milnor(F0, w)
    assert m.method_dimension == m.method_formula
    assert m.orbit_codim == 1 + m.mu
