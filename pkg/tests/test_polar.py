from fractions import Fraction as Q

import mpmath
import pytest
from hypothesis import given, settings

from germlab.balls import Ball, context, eval_ball, isolate_roots
from germlab.expr import MPoly, UniPoly, derive, gcd_uni, parse, substitute
from germlab.grading import WeightSystem, detect_weights, orient
from germlab.polar import (DegeneratePolar, PolarBranch, branch_curve, branch_roots,
                           polar_poly)
from strategies import unipolys

x, y, t = (MPoly.var(v) for v in "xyt")
EPS = mpmath.mpf(2) ** -40


def family(text):
    F = parse(text)
    G, w, _ = orient(F, detect_weights(F))
    return G, w


class TestPolarPoly:
    def test_examples(self):
        assert polar_poly(parse("x^3 + y^6 - 3*t^2*x*y^4")) == 3 * x ** 2 - 3 * t ** 2 * y ** 4
        assert polar_poly(parse("x^3 + (1+t)*y^7")) == 3 * x ** 2
        assert polar_poly(parse("x*y")) == y

    def test_constant_in_x(self):
        with pytest.raises(ValueError):
            polar_poly(parse("y^3 + t*y^3"))


class TestBranchRoots:
    def test_hp_quarter(self):
        F, w = family("x^3 + y^6 - 3*t^2*x*y^4")
        d = branch_roots(F, w, Q(1, 4))
        assert d.p == UniPoly("a", [Q(-3, 16), 0, 3])
        assert [b.a for b in d.branches] == [Q(1, 4), Q(-1, 4)]
        assert [b.multiplicity for b in d.branches] == [1, 1]
        assert d.x_axis_order == 0 and d.squarefree

    def test_double_root(self):
        F, w = family("x^3 + (1+t)*y^7")
        for t0 in (0, Q(1, 2), 5):
            d = branch_roots(F, w, t0)
            assert [(b.a, b.multiplicity) for b in d.branches] == [(0, 2)]
            assert not d.squarefree

    def test_exact_numeric_control(self):
        F, w = family("x^3 + y^6 + t*x*y^4")
        d = branch_roots(F, w, -3)
        assert [b.a for b in d.branches] == [1, -1]

    def test_ball_branches(self):
        F, w = family("x^3 + y^6 + t*x*y^4")
        d = branch_roots(F, w, 1)
        assert len(d.branches) == 2
        ctx = context(128)
        for b, sign in zip(d.branches, (1, -1)):
            assert not b.exact and b.a.radius <= EPS
            assert b.a.contains(0) is False
            # +-i/sqrt(3)
            assert abs(b.a.center - sign * ctx.mpc(0, 1) / ctx.sqrt(3)) <= b.a.radius + ctx.mpf(2) ** -120

    def test_degenerate(self):
        # F_x = t*y^4 vanishes identically at t = 0
        with pytest.raises(DegeneratePolar):
            branch_roots(parse("t*x*y^4 + y^6"), WeightSystem((2, 1), 6), 0)

    def test_x_axis_component(self):
        F, w = family("x^3*y + y^7 + t*x^2*y^3")
        d = branch_roots(F, w, 1)
        assert d.x_axis_order == 1

    def test_needs_orientation(self):
        with pytest.raises(ValueError):
            branch_roots(parse("y^3 + x^6"), WeightSystem((1, 2), 6), 0)


class TestBranchCurve:
    def test_points(self):
        w = (2, 1)
        assert branch_curve(PolarBranch(Q(1, 4), 1, w), [1])[0] == (Q(1, 4), 1)
        assert branch_curve(PolarBranch(Q(-1, 4), 1, w), [2])[0] == (-1, 2)
        assert branch_curve(PolarBranch(Q(3), 1, w), [0])[0] == (0, 0)

    def test_f_along_branch_is_a_monomial(self):
        F, w = family("x^3 + y^6 - 3*t^2*x*y^4")
        s = MPoly.var("s")
        for b in branch_roots(F, w, Q(1, 4)).branches:
            G = substitute(F, {"t": Q(1, 4), "x": b.a * s ** 2, "y": s})
            assert set(G.coefficients_in(("s",))) == {(6,)}


def _oracle_roots(p):
    with mpmath.workdps(60):
        return mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator
                                 for c in reversed(p.coeffs)], maxsteps=200, extraprec=200)


def _squarefree(p):
    g = gcd_uni(p, p.diff())
    return p.divmod(g)[0] if g.degree > 0 else p


@settings(max_examples=200, deadline=None)
@given(unipolys(min_degree=1, max_degree=5))
def test_root_count_and_oracle(p):
    q = _squarefree(p)
    found = isolate_roots(q)
    assert sum(c for _, c in found) == q.degree
    for r in _oracle_roots(q):
        assert any(abs(b.center - r) <= b.radius + mpmath.mpf(10) ** -30 for b, _ in found)


@settings(max_examples=200, deadline=None)
@given(unipolys(min_degree=2, max_degree=5))
def test_conjugation_symmetry(p):
    found = isolate_roots(_squarefree(p))
    for b, _ in found:
        conj = Ball(b.center.conjugate(), b.radius, b.ctx)
        assert any(conj.overlaps(o) for o, _ in found)


@settings(max_examples=200, deadline=None)
@given(unipolys(min_degree=1, max_degree=4))
def test_branch_residual_certification(p):
    """Every branch annihilates F_x: exactly, or inside the certified ball."""
    # integrate p in x so that F_x(a, 1) = p(a), with weights (2, 1)
    w = WeightSystem((2, 1), 2 * (p.degree + 1))
    F = MPoly.const(0)
    for i, c in enumerate(p.coeffs):
        F = F + x ** (i + 1) * y ** (2 * (p.degree - i)) * (Q(c) / (i + 1))
    F = F + t * y ** w.degree
    d = branch_roots(F, w, 0)
    Fx = derive(F, "x")
    for b in d.branches:
        for s0 in (Q(1), Q(1, 2), Q(-3, 2)):
            px, py = branch_curve(b, [s0])[0]
            if b.exact:
                assert substitute(Fx, {"x": px, "y": py}).is_zero()
            else:
                ctx = b.a.ctx
                val = eval_ball(substitute(Fx, {"y": 1}).to_uni("x"), b.a) \
                    * Ball.exact(s0, ctx) ** (w.degree - 2)
                assert val.contains_zero()
