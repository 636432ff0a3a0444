"""The polar curve {F_x = 0} of a weighted-homogeneous family and its branches.

With weights ``w_x > w_y`` every branch of the polar curve off the axis
{y = 0} is ``s -> (a s^{w_x}, s^{w_y})`` where ``a`` is a root of the
dehomogenized polar polynomial ``p(a) = F_x(a, 1, t0)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .balls import Ball, context, eval_ball, isolate_roots, mpf_to_fraction
from .expr import GaussRat, MPoly, UniPoly, derive, gcd_uni, rational_roots, scalar_key, sqf_list, substitute

DEFAULT_PRECISION = 128
DEFAULT_EPSILON = Fraction(1, 2 ** 40)


class DegeneratePolar(ValueError):
    """``F_x(a, 1, t0)`` vanishes identically."""


@dataclass(frozen=True)
class PolarBranch:
    a: object  # Fraction, GaussRat or Ball
    multiplicity: int
    weights: tuple
    clustered: bool = False

    @property
    def exact(self):
        return not isinstance(self.a, Ball)

    def sort_key(self):
        # descending real part, then descending imaginary part
        if self.exact:
            re, im = scalar_key(self.a)
            return (-re, -im)
        return (-mpf_to_fraction(self.a.real), -mpf_to_fraction(self.a.imag))


@dataclass
class PolarPiece:
    """A squarefree factor of ``p`` together with the branches it carries."""

    poly: UniPoly
    multiplicity: int
    branch_indices: list


@dataclass
class PolarDecomposition:
    branches: list
    x_axis_order: int
    y_axis_in_branches: bool
    squarefree: bool
    t0: object
    p: UniPoly
    weights: tuple
    pieces: list = field(default_factory=list)
    precision: int = DEFAULT_PRECISION
    epsilon: Fraction = DEFAULT_EPSILON
    generic_x_axis_order: int = 0


def polar_poly(F, x="x"):
    """``dF/dx``; the polar set is its zero locus."""
    if x not in F.vars:
        raise ValueError(f"{F} does not depend on {x}")
    return derive(F, x)


def dehomogenize(G, w, t0=None):
    """``G(a, 1, t0)`` as a UniPoly in ``a``.

    Without ``t0`` the coefficients are UniPolys in t.
    """
    x, y = w.vars
    bind = {x: MPoly.var("a"), y: 1}
    if t0 is not None:
        bind["t"] = t0
    H = substitute(G, bind)
    if t0 is None and "t" in H.vars:
        return H.to_uni("a", "t")
    return H.to_uni("a")


def _y_order(G, y):
    if G.is_zero():
        return 0
    if y not in G.vars:
        return 0
    i = G.vars.index(y)
    return min(e[i] for e in G.terms)


def _at(F, t0):
    return substitute(F, {"t": t0}) if "t" in F.vars else F


def generic_squarefree(F, w):
    """Whether F_x is squarefree over Q(t) (no repeated factor, y included)."""
    Fx = derive(F, w.vars[0])
    p = dehomogenize(Fx, w)
    if p.degree <= 0:
        return _y_order(Fx, w.vars[1]) <= 1
    return gcd_uni(p, p.diff()).degree == 0 and _y_order(Fx, w.vars[1]) <= 1


def branch_roots(F, w, t0, precision=DEFAULT_PRECISION, epsilon=DEFAULT_EPSILON):
    """Decompose the polar curve of ``F`` at the parameter value ``t0``.

    Rational roots (and every linear factor) are kept exact; the rest are
    enclosed in certified balls.  Multiplicities come from the squarefree
    decomposition, never from numerical clustering.
    """
    if w.n != 2:
        raise ValueError("polar branches are defined for two spatial variables")
    if w.weights[0] <= w.weights[1]:
        raise ValueError("branch parametrization needs w_x > w_y; orient the family first")
    x, y = w.vars
    Fx = polar_poly(F, x)
    Fx0 = _at(Fx, t0)
    p = dehomogenize(Fx0, w)
    if not p:
        raise DegeneratePolar(f"F_x(a, 1, {t0}) vanishes identically")

    raw = []   # (value, multiplicity, clustered, piece index)
    pieces = []
    for q, mult in sqf_list(p):
        exact = []
        k = q.low_order()
        if k:
            exact.append(Fraction(0))
            q = q.shift_down(k)
        for r in rational_roots(q) or []:
            if r != 0:
                exact.append(r)
                q = q.exquo(UniPoly("a", [-r, 1]))
        for r in exact:
            pieces.append(PolarPiece(UniPoly("a", [-r, 1]), mult, []))
            raw.append((r, mult, False, len(pieces) - 1))
        if q.degree == 1:
            r = -q.coeffs[0] / q.coeffs[1]
            pieces.append(PolarPiece(q.monic(), mult, []))
            raw.append((r, mult, False, len(pieces) - 1))
        elif q.degree > 1:
            pieces.append(PolarPiece(q.monic(), mult, []))
            for ball, count in isolate_roots(q, precision, epsilon):
                raw.append((ball, mult * count, count > 1, len(pieces) - 1))

    branches = [PolarBranch(v, m, w.weights, cl) for v, m, cl, _ in raw]
    order = sorted(range(len(branches)), key=lambda i: branches[i].sort_key())
    branches = [branches[i] for i in order]
    for new_i, old_i in enumerate(order):
        pieces[raw[old_i][3]].branch_indices.append(new_i)

    return PolarDecomposition(
        branches=branches,
        x_axis_order=_y_order(Fx0, y),
        y_axis_in_branches=any(b.exact and b.a == 0 for b in branches),
        squarefree=generic_squarefree(F, w),
        t0=t0,
        p=p,
        weights=w.weights,
        pieces=pieces,
        precision=precision,
        epsilon=epsilon,
        generic_x_axis_order=_y_order(Fx, y),
    )


def _as_value(v, ctx):
    if isinstance(v, Ball):
        return v
    if isinstance(v, (int, Fraction, GaussRat)):
        return v
    return Ball.exact(complex(v), ctx)


def branch_curve(b, s_samples, prec=DEFAULT_PRECISION):
    """Points ``(a s^{w1}, s^{w2})`` along a branch.

    Exact when the branch and the sample are exact, balls otherwise.
    """
    w1, w2 = b.weights
    ctx = b.a.ctx if isinstance(b.a, Ball) else context(prec)
    out = []
    for s in s_samples:
        s = _as_value(s, ctx)
        a = b.a
        if isinstance(s, Ball) and not isinstance(a, Ball):
            a = Ball.exact(a, ctx)
        if isinstance(a, Ball) and not isinstance(s, Ball):
            out.append((a * Ball.exact(s, ctx) ** w1, Ball.exact(s, ctx) ** w2))
        else:
            out.append((a * s ** w1, s ** w2))
    return out


def eval_at_branch(G, b, w, t0):
    """``G(a, 1, t0)`` at the branch coefficient (exact or ball)."""
    return eval_at_branches(G, [b], w, t0)[0]


def eval_at_branches(G, branches, w, t0):
    g = dehomogenize(_at(G, t0), w)
    return [eval_ball(g, b.a) if isinstance(b.a, Ball) else g(b.a) for b in branches]
