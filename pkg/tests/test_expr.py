from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab.expr import (GaussRat, MPoly, ParseError, UniPoly, derive, gcd_uni, parse,
                          parse_scalar, rational_roots, sqf_list, substitute)
from strategies import mpolys, small_rationals, unipolys

x, y, t, s, a = (MPoly.var(v) for v in "xytsa")

HP = "x^3 + y^6 - 3*t^2*x*y^4"


class TestParse:
    def test_hp_family(self):
        F = parse(HP)
        assert len(F.terms) == 3
        assert F == x ** 3 + y ** 6 - 3 * t ** 2 * x * y ** 4

    def test_zero(self):
        F = parse("0")
        assert F.is_zero() and F.terms == {}

    def test_whitney_expansion(self):
        W = parse("x*y*(x-y)*(x-t*y)")
        assert W == x ** 3 * y - (1 + t) * x ** 2 * y ** 2 + t * x * y ** 3

    def test_rational_literal(self):
        assert parse("1/4*x") == x * Q(1, 4)
        assert parse("-(x - 2)^2") == -(x - 2) ** 2

    def test_printing_is_graded_lex(self):
        assert str(parse("y + x^2 + 1")) == "x^2 + y + 1"

    @pytest.mark.parametrize("text,where", [
        ("x^", 2), ("x + * y", 4), ("(x + y", 6), ("2x", 1), ("x**2", 1),
    ])
    def test_syntax_errors_carry_position(self, text, where):
        with pytest.raises(ParseError) as exc:
            parse(text)
        assert exc.value.pos == where

    @pytest.mark.parametrize("text", ["x^-1", "x^(1/2)", "x^y", "q*x", "sin(x)", "0.5*x",
                                      "x/y", "1/0", "x^2^3"])
    def test_rejected(self, text):
        with pytest.raises(ParseError):
            parse(text)

    def test_decimal_hint(self):
        with pytest.raises(ParseError, match="rational"):
            parse("0.25*x")

    def test_scalars(self):
        assert parse_scalar("1/4") == Q(1, 4)
        assert parse_scalar("-3") == -3
        assert parse_scalar("1/2+3/4*i") == GaussRat(Q(1, 2), Q(3, 4))
        assert parse_scalar("-i") == GaussRat(0, -1)
        with pytest.raises(ParseError):
            parse_scalar("0.25")


class TestDerive:
    def test_partials(self):
        F = parse(HP)
        assert derive(F, "x") == 3 * x ** 2 - 3 * t ** 2 * y ** 4
        assert derive(F, "t") == -6 * t * x * y ** 4

    def test_constant(self):
        assert derive(MPoly.const(7), "x").is_zero()


class TestSubstitute:
    def test_dehomogenize(self):
        p = substitute(3 * x ** 2 - 3 * t ** 2 * y ** 4, {"x": a, "y": 1})
        assert p == 3 * a ** 2 - 3 * t ** 2
        u = p.to_uni("a", "t")
        assert u.degree == 2

    def test_empty(self):
        F = parse(HP)
        assert substitute(F, {}) == F

    def test_along_branch(self):
        F = parse(HP)
        assert substitute(F, {"x": t * s ** 2, "y": s}) == (1 - 2 * t ** 3) * s ** 6

    def test_simultaneous(self):
        assert substitute(x - y, {"x": y, "y": x}) == y - x


class TestUni:
    def test_gcd_over_q_t(self):
        p = substitute(3 * x ** 2 - 3 * t ** 2, {"x": a}).to_uni("a", "t")
        q = UniPoly("a", [0, 6])
        assert gcd_uni(p, q).degree == 0

    def test_gcd_zero_and_common(self):
        p = UniPoly("a", [Q(2), Q(4)])
        assert gcd_uni(p, UniPoly("a", [])) == p.monic()
        assert gcd_uni(UniPoly("a", [0, 0, 1]), UniPoly("a", [0, 1])) == UniPoly("a", [0, 1])

    def test_sqf(self):
        p = UniPoly("a", [0, 0, 3])
        assert [(f.degree, m) for f, m in sqf_list(p)] == [(1, 2)]

    def test_rational_roots(self):
        p = UniPoly("a", [Q(-3, 16), 0, 3])
        assert sorted(rational_roots(p)) == [Q(-1, 4), Q(1, 4)]
        assert rational_roots(UniPoly("a", [1, 0, 3])) == []


class TestGauss:
    def test_field(self):
        z = GaussRat(1, 2)
        assert z * z.conjugate() == 5
        assert (1 / z) * z == 1
        assert GaussRat(3, 0) == 3 and hash(GaussRat(3, 0)) == hash(Q(3))


# --- properties --------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(mpolys(), mpolys(), mpolys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@settings(max_examples=200, deadline=None)
@given(mpolys(), mpolys(), st.sampled_from("xyt"))
def test_leibniz(p, q, v):
    assert derive(p * q, v) == derive(p, v) * q + p * derive(q, v)


@settings(max_examples=200, deadline=None)
@given(mpolys(), mpolys(), mpolys(vars_=("s", "t"), max_terms=2), mpolys(vars_=("s",), max_terms=2))
def test_substitute_is_a_ring_morphism(p, q, gx, gy):
    b = {"x": gx, "y": gy}
    assert substitute(p * q, b) == substitute(p, b) * substitute(q, b)
    assert substitute(p + q, b) == substitute(p, b) + substitute(q, b)


@settings(max_examples=200, deadline=None)
@given(mpolys(vars_=("x", "y", "z", "t")))
def test_parse_print_roundtrip(p):
    assert parse(str(p)) == p


@settings(max_examples=200, deadline=None)
@given(unipolys(max_degree=4), unipolys(max_degree=3), unipolys(min_degree=1, max_degree=2))
def test_gcd_divides(p, q, common):
    P, Qp = p * common, q * common
    g = gcd_uni(P, Qp)
    assert g.degree >= common.degree
    assert P.divmod(g)[1].is_zero() and Qp.divmod(g)[1].is_zero()


@settings(max_examples=200, deadline=None)
@given(unipolys(min_degree=1), small_rationals)
def test_horner_matches_mpoly(p, v):
    assert p(v) == substitute(p.to_mpoly(), {"a": v}).constant_value()
