"""Complex ball arithmetic and certified isolation of polynomial roots.

A :class:`Ball` is a midpoint in mpmath plus a radius that bounds the
distance to the true value.  Every operation inflates the radius by a few
units in the last place of the result, which covers the rounding of
mpmath's correctly rounded primitives.

Root isolation runs the Aberth simultaneous iteration from fixed starting
points, then certifies the approximations with the inclusion theorem of
Braess-Hadeler / Carstensen: for a degree-n polynomial with distinct
approximations z_i and Weierstrass corrections W_i, the union of the discs
D(z_i, n|W_i|) holds every root, and a connected component made of m discs
holds exactly m roots.  Pairwise disjoint discs therefore isolate one root
each.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath

from .expr import GaussRat

MAX_PRECISION_DOUBLINGS = 4
ABERTH_MAX_ITER = 500

_CONTEXTS = {}


def context(prec):
    ctx = _CONTEXTS.get(prec)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.prec = prec
        # rounding slack used by every ball operation
        ctx.ball_ulps = ctx.ldexp(1, 3 - prec)
        ctx.ball_up = 1 + ctx.ldexp(1, 4 - prec)
        ctx.ball_down = 1 - ctx.ldexp(1, 4 - prec)
        ctx.ball_tiny = ctx.ldexp(1, -4 * prec)
        _CONTEXTS[prec] = ctx
    return ctx


class RootIsolationError(ArithmeticError):
    pass


class Ball:
    __slots__ = ("center", "radius", "ctx")

    def __init__(self, center, radius, ctx):
        self.ctx = ctx
        self.center = ctx.mpc(center)
        self.radius = ctx.mpf(radius)

    # --- construction --------------------------------------------------

    @classmethod
    def exact(cls, v, ctx):
        """Ball around an exact scalar (Fraction, int, GaussRat)."""
        if isinstance(v, Ball):
            return v
        if isinstance(v, GaussRat):
            c = ctx.mpc(_mpf(v.re, ctx), _mpf(v.im, ctx))
        elif isinstance(v, (int, Fraction)):
            c = ctx.mpc(_mpf(Fraction(v), ctx))
        else:
            c = ctx.mpc(v)
            return cls(c, _ulps(c, ctx), ctx)
        return cls(c, _ulps(c, ctx), ctx)

    @classmethod
    def point(cls, z, ctx):
        """Ball of radius zero around a value already in mpmath."""
        return cls(z, 0, ctx)

    def _other(self, o):
        return o if isinstance(o, Ball) else Ball.exact(o, self.ctx)

    # --- arithmetic ----------------------------------------------------

    def _make(self, c, r):
        return Ball(c, _up(r, self.ctx) + _ulps(c, self.ctx), self.ctx)

    def __add__(self, o):
        o = self._other(o)
        return self._make(self.center + o.center, self.radius + o.radius)

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.center, self.radius, self.ctx)

    def __sub__(self, o):
        o = self._other(o)
        return self._make(self.center - o.center, self.radius + o.radius)

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        ctx = self.ctx
        r = (_mag(self.center) * o.radius + _mag(o.center) * self.radius
             + self.radius * o.radius)
        return self._make(self.center * o.center, r)

    __rmul__ = __mul__

    def inverse(self):
        ctx = self.ctx
        m = ctx.fabs(self.center)
        if m <= self.radius:
            raise ZeroDivisionError("ball contains zero")
        low = _down(m - self.radius, ctx)
        r = self.radius / (m * low)
        return self._make(1 / self.center, r)

    def __truediv__(self, o):
        return self * self._other(o).inverse()

    def __rtruediv__(self, o):
        return self._other(o) * self.inverse()

    def __pow__(self, k):
        out = Ball.exact(1, self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- predicates ----------------------------------------------------

    def abs_upper(self):
        return _up(self.ctx.fabs(self.center) + self.radius, self.ctx)

    def contains_zero(self):
        return self.ctx.fabs(self.center) <= self.radius

    def contains(self, v):
        d = self - Ball.exact(v, self.ctx)
        return d.contains_zero()

    def overlaps(self, other):
        d = self.ctx.fabs(self.center - other.center)
        return d <= _up(self.radius + other.radius, self.ctx)

    @property
    def real(self):
        return self.center.real

    @property
    def imag(self):
        return self.center.imag

    def __repr__(self):
        return f"Ball({mpmath.nstr(self.center, 20)}, r={mpmath.nstr(self.radius, 5)})"


def mpf_to_fraction(x):
    """Exact value of a (finite) mpf."""
    sign, man, exp, _ = x._mpf_
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _mpf(q, ctx):
    return ctx.mpf(q.numerator) / q.denominator


def _mag(c):
    # |re| + |im| >= |c|, without a square root
    return abs(c.real) + abs(c.imag)


def _ulps(c, ctx):
    # four units in the last place of |c|
    return _mag(c) * ctx.ball_ulps


def _up(r, ctx):
    return r * ctx.ball_up + ctx.ball_tiny


def _down(r, ctx):
    return r * ctx.ball_down


def eval_ball(poly, z):
    """Horner evaluation of an exact-coefficient UniPoly at a ball."""
    ctx = z.ctx
    acc = Ball.exact(0, ctx)
    for c in reversed(poly.coeffs):
        acc = acc * z + Ball.exact(c, ctx)
    return acc


def _to_mpc(c, ctx):
    if isinstance(c, GaussRat):
        return ctx.mpc(_mpf(c.re, ctx), _mpf(c.im, ctx))
    return ctx.mpc(_mpf(Fraction(c), ctx))


def cauchy_bound(coeffs, ctx):
    lc = ctx.fabs(coeffs[-1])
    return 1 + max(ctx.fabs(c) / lc for c in coeffs[:-1])


def aberth(poly, ctx):
    """Approximate all roots of a squarefree polynomial (no certificate)."""
    coeffs = [_to_mpc(c, ctx) for c in poly.coeffs]
    dcoeffs = [c * k for k, c in enumerate(coeffs)][1:]
    n = len(coeffs) - 1
    if n == 1:
        return [-coeffs[0] / coeffs[1]]
    bound = cauchy_bound(coeffs, ctx)
    # fixed starting points on a circle, rotated off the real axis
    z = [bound / 2 * ctx.expj(2 * ctx.pi * k / n + ctx.mpf(0.4)) for k in range(n)]
    tol = ctx.ldexp(1, 10 - ctx.prec)

    def horner(cs, x):
        acc = ctx.mpc(0)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    for _ in range(ABERTH_MAX_ITER):
        biggest = 0
        new = list(z)
        for i in range(n):
            p = horner(coeffs, z[i])
            if p == 0:
                continue
            dp = horner(dcoeffs, z[i])
            if dp == 0:
                # sitting on a critical point: nudge off it
                new[i] = z[i] + ctx.ldexp(1, -ctx.prec // 4) * (1 + ctx.mpc(0, 1))
                biggest = max(biggest, 1)
                continue
            ratio = p / dp
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * s)
            new[i] = z[i] - step
            scale = max(ctx.fabs(z[i]), 1)
            biggest = max(biggest, ctx.fabs(step) / scale)
        z = new
        if biggest < tol:
            break
    return z


def _inclusion_radii(poly, z, ctx):
    n = len(z)
    lc = Ball.exact(poly.lc(), ctx)
    radii = []
    for i in range(n):
        zi = Ball.point(z[i], ctx)
        num = eval_ball(poly, zi)
        den = lc
        for j in range(n):
            if j != i:
                den = den * (zi - Ball.point(z[j], ctx))
        try:
            w = num / den
        except ZeroDivisionError:
            return None
        radii.append(_up(n * w.abs_upper(), ctx))
    return radii


def _components(z, radii, ctx):
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if ctx.fabs(z[i] - z[j]) <= radii[i] + radii[j]:
                parent[find(i)] = find(j)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


def isolate_roots(poly, prec=128, epsilon=Fraction(1, 2 ** 40)):
    """Certified enclosures of the roots of a squarefree polynomial.

    Returns a list of ``(ball, count)`` pairs.  ``count`` is 1 for an
    isolated root; a larger count means the discs of that many roots could
    not be separated even at raised precision, but their union fits in a
    ball of radius below ``epsilon`` (a cluster).  Precision is doubled up
    to four times until every root is isolated with radius at most
    ``epsilon``.
    """
    if poly.degree < 1:
        return []
    eps = None
    last = None
    p = prec
    for _ in range(MAX_PRECISION_DOUBLINGS + 1):
        ctx = context(p)
        eps = ctx.mpf(epsilon.numerator) / epsilon.denominator
        z = aberth(poly, ctx)
        radii = _inclusion_radii(poly, z, ctx)
        if radii is not None:
            comps = _components(z, radii, ctx)
            last = (ctx, z, radii, comps)
            if all(len(c) == 1 and radii[c[0]] <= eps for c in comps):
                return [(Ball(z[c[0]], radii[c[0]], ctx), 1) for c in comps]
        p *= 2
    if last is None:
        raise RootIsolationError(f"could not separate approximations for {poly}")
    ctx, z, radii, comps = last
    out = []
    for c in comps:
        if len(c) == 1:
            if radii[c[0]] > eps:
                raise RootIsolationError(f"root enclosure wider than epsilon for {poly}")
            out.append((Ball(z[c[0]], radii[c[0]], ctx), 1))
            continue
        center = sum((z[i] for i in c), ctx.mpc(0)) / len(c)
        r = max(ctx.fabs(z[i] - center) + radii[i] for i in c)
        if r > eps:
            raise RootIsolationError(f"unresolved root cluster of size {len(c)} for {poly}")
        out.append((Ball(center, _up(r, ctx), ctx), len(c)))
    return out
