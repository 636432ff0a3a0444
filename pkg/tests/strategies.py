"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction
from math import gcd

from hypothesis import strategies as st

from germlab.expr import MPoly, UniPoly

small_rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
nonzero_rationals = small_rationals.filter(bool)


@st.composite
def mpolys(draw, vars_=("x", "y", "t"), max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in vars_)
        terms[e] = terms.get(e, 0) + draw(small_rationals)
    return MPoly(vars_, terms)


@st.composite
def unipolys(draw, var="a", min_degree=0, max_degree=5):
    deg = draw(st.integers(min_degree, max_degree))
    coeffs = [draw(st.integers(-6, 6)) for _ in range(deg)]
    coeffs.append(draw(st.integers(1, 6)) * draw(st.sampled_from((1, -1))))
    return UniPoly(var, [Fraction(c) for c in coeffs])


@st.composite
def weighted_families(draw, max_terms=4):
    """A w-homogeneous family in x, y, t with w_x > w_y, plus its (w, d)."""
    wy = draw(st.integers(1, 3))
    wx = draw(st.integers(wy + 1, 5).filter(lambda v: gcd(v, wy) == 1))
    d = wx * wy * draw(st.integers(1, 2))
    mons = [(i, (d - wx * i) // wy) for i in range(d // wx + 1) if (d - wx * i) % wy == 0]
    picked = draw(st.lists(st.sampled_from(mons), min_size=2, max_size=max_terms, unique=True))
    # pure powers keep the weights determined
    picked = sorted(set(picked) | {mons[0], mons[-1]})
    terms = {}
    for i, j in picked:
        c0 = draw(nonzero_rationals)
        terms[(i, j, 0)] = c0
        if draw(st.booleans()):
            terms[(i, j, draw(st.integers(1, 2)))] = draw(nonzero_rationals)
    return MPoly(("x", "y", "t"), terms), (wx, wy), d
