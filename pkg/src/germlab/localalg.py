"""Graded local algebra: TF and Jacobian ideals, membership, Milnor numbers.

Membership is decided degree by degree in the graded polynomial ring.  For
weighted-homogeneous targets and generators this agrees with membership
in the analytic local ring O_n: writing the target as an O_n-combination of
the generators and keeping only the degree-e part of each multiplier
gives a polynomial combination.  That argument is relied on here and is
not re-derived in code.

Everything involving the parameter t is done over the fraction field
Q(t) with fraction-free elimination, so a positive verdict holds for all
but the finitely many t where the cleared denominator vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import prod

from .expr import MPoly, UniPoly, derive, gcd_uni, rational_roots, sqf_list, substitute
from .grading import graded_basis, is_w_homogeneous, weighted_degree_of
from .linalg import fraction_free_rref, rank


class NonIsolatedSingularity(ValueError):
    """The Jacobian ideal does not have finite colength."""


class MilnorMismatch(ArithmeticError):
    """The two Milnor number computations disagree (a bug, never input)."""


@dataclass
class IdealGens:
    gens: list
    degrees: list
    labels: list

    def __len__(self):
        return len(self.gens)

    def with_generator(self, g, degree, label):
        return IdealGens(self.gens + [g], self.degrees + [degree], self.labels + [label])


@dataclass
class MembershipCertificate:
    """``sum(multipliers[i] * gens[i]) == denominator * target``.

    ``denominator`` is a monic polynomial in t (``1`` when no division was
    needed).  Its rational roots are listed in ``exceptional_t``; any
    remaining factor is kept symbolically in ``exceptional_conditions``.
    """

    target: MPoly
    gens: IdealGens
    multipliers: list
    denominator: UniPoly
    exceptional_t: list = field(default_factory=list)
    exceptional_conditions: list = field(default_factory=list)
    member: bool = True

    def residual(self):
        lhs = MPoly.const(0)
        for m, g in zip(self.multipliers, self.gens.gens):
            lhs = lhs + m * g
        return lhs - self.denominator.to_mpoly() * self.target

    def verify(self):
        return self.residual().is_zero()

    def multiplier_text(self, i):
        den = self.denominator
        num = self.multipliers[i]
        if den.degree <= 0:
            return str(num)
        return f"({num})/({den})"


@dataclass
class NotMember:
    """Target is outside the ideal over Q(t); ``residual`` lists the
    inconsistent reduced equations as (row index, value) pairs."""

    target: MPoly
    gens: IdealGens
    residual: list
    rank: int
    member: bool = False


@dataclass
class MilnorData:
    mu: int
    method_dimension: int
    method_formula: int
    orbit_codim: int
    n: int
    quotient_dims: dict = field(default_factory=dict)


def tf_gens(F, w):
    """The generators ``x_i * dF/dx_j`` of the TF ideal, zeros dropped."""
    if not is_w_homogeneous(F, w, w.degree):
        raise ValueError(f"{F} is not w-homogeneous of degree {w.degree}")
    gens, degs, labels = [], [], []
    for j, vj in enumerate(w.vars):
        dj = derive(F, vj)
        if dj.is_zero():
            continue
        for i, vi in enumerate(w.vars):
            gens.append(MPoly.var(vi) * dj)
            degs.append(w.degree - w.weights[j] + w.weights[i])
            labels.append(f"{vi}*F_{vj}")
    return IdealGens(gens, degs, labels)


def jacobian_gens(F, w):
    gens, degs, labels = [], [], []
    for j, vj in enumerate(w.vars):
        dj = derive(F, vj)
        if dj.is_zero():
            continue
        gens.append(dj)
        degs.append(w.degree - w.weights[j])
        labels.append(f"F_{vj}")
    return IdealGens(gens, degs, labels)


def _t_entry(c, parametric):
    """Coefficient (an MPoly in t at most) as a matrix entry."""
    if parametric:
        return c.to_uni("t") if not c.is_zero() else UniPoly("t", ())
    return c.constant_value()


def _degree_slice(gens, w, e, parametric):
    """Columns spanning the degree-e piece of the ideal.

    Returns ``(basis, columns, origin)`` where ``columns[k]`` maps basis
    index to entry and ``origin[k] = (generator index, monomial)``.
    """
    basis = graded_basis(w, e)
    index = {m: i for i, m in enumerate(basis.monomials)}
    columns, origin = [], []
    for gi, (g, dg) in enumerate(zip(gens.gens, gens.degrees)):
        if dg > e:
            continue
        for mono in graded_basis(w, e - dg):
            prod_ = g * MPoly.monomial(w.vars, mono)
            col = {}
            for key, c in prod_.coefficients_in(w.vars).items():
                col[index[key]] = _t_entry(c, parametric)
            columns.append(col)
            origin.append((gi, mono))
    return basis, columns, origin


def _has_t(*polys):
    return any("t" in p.vars for p in polys)


def graded_membership(target, gens, w):
    """Decide whether ``target`` lies in the ideal generated by ``gens``.

    Works over Q(t) when t occurs and over the exact scalars otherwise.
    Returns a :class:`MembershipCertificate` or :class:`NotMember`.
    """
    for g, dg in zip(gens.gens, gens.degrees):
        if weighted_degree_of(g, w) != dg:
            raise ValueError(f"generator {g} is not w-homogeneous of degree {dg}")
    parametric = _has_t(target, *gens.gens)
    one_t = UniPoly("t", [1])
    if target.is_zero():
        zero = [MPoly.const(0)] * len(gens)
        return MembershipCertificate(target, gens, zero, one_t)
    e = weighted_degree_of(target, w)
    if e is None:
        raise ValueError(f"target {target} is not w-homogeneous")
    basis, columns, origin = _degree_slice(gens, w, e, parametric)
    zero = UniPoly("t", ()) if parametric else Fraction(0)
    nrows, ncols = len(basis), len(columns)
    rhs = {}
    for key, c in target.coefficients_in(w.vars).items():
        rhs[basis.index(key)] = _t_entry(c, parametric)
    m = [[columns[k].get(i, zero) for k in range(ncols)] + [rhs.get(i, zero)]
         for i in range(nrows)]
    pivots, det = fraction_free_rref(m, ncols, one=one_t if parametric else 1)
    r = len(pivots)
    bad = [(i, m[i][ncols]) for i in range(r, nrows) if m[i][ncols] != 0]
    if bad:
        return NotMember(target, gens, bad, r)

    # solution: unknown at pivot column c_i equals m[i][ncols] / det
    sol = {c: m[i][ncols] for i, c in enumerate(pivots)}
    if parametric:
        den = det if isinstance(det, UniPoly) else UniPoly("t", [det])
        nums = [v if isinstance(v, UniPoly) else UniPoly("t", [v]) for v in sol.values()]
        g = reduce(lambda a, b: gcd_uni(a, b), nums, den)
        den = den.exquo(g)
        sol = {c: (v if isinstance(v, UniPoly) else UniPoly("t", [v])).exquo(g)
               for c, v in sol.items()}
        lc = den.lc()
        den = den.exquo(lc)
        sol = {c: v.exquo(lc) for c, v in sol.items()}
    else:
        sol = {c: v / det for c, v in sol.items()}
        den = one_t

    multipliers = [MPoly.const(0) for _ in gens.gens]
    for c, v in sol.items():
        gi, mono = origin[c]
        coeff = v.to_mpoly() if isinstance(v, UniPoly) else v
        multipliers[gi] = multipliers[gi] + MPoly.monomial(w.vars, mono) * coeff
    exc, conds = exceptional_values(den)
    cert = MembershipCertificate(target, gens, multipliers, den, exc, conds)
    if not cert.verify():
        raise ArithmeticError("membership certificate failed resubstitution")
    return cert


def exceptional_values(den):
    """Rational roots of ``den`` plus its leftover non-rational factors."""
    if den.degree <= 0:
        return [], []
    roots = []
    rest = UniPoly(den.var, [1])
    for q, _ in sqf_list(den):
        rr = rational_roots(q) or []
        roots.extend(rr)
        for r in rr:
            q = q.exquo(UniPoly(den.var, [-r, 1]))
        if q.degree > 0:
            rest = rest * q
    return sorted(roots), ([rest] if rest.degree > 0 else [])


def at_t(F, t0):
    return substitute(F, {"t": t0}) if "t" in F.vars else F


def quotient_dimension(gens, w, e):
    """``dim H_e - rank`` of the ideal's degree-e piece (t-free gens)."""
    basis, columns, _ = _degree_slice(gens, w, e, parametric=False)
    if not basis.monomials:
        return 0
    if not columns:
        return len(basis)
    rows = [[col.get(i, Fraction(0)) for col in columns] for i in range(len(basis))]
    return len(basis) - rank(rows, len(columns))


def top_degree(w):
    """Socle degree of a weighted-homogeneous Milnor algebra."""
    return sum(w.degree - 2 * wi for wi in w.weights)


def _quotient_vanishes_beyond(gens, w, top):
    # zero in degrees top+1 .. top+max(w) forces zero in every higher degree,
    # since each monomial there is x_i times a monomial of degree > top
    return all(quotient_dimension(gens, w, e) == 0
               for e in range(max(top, -1) + 1, max(top, -1) + 1 + max(w.weights)))


def milnor_formula(w):
    v = prod(Fraction(w.degree, wi) - 1 for wi in w.weights)
    if v.denominator != 1:
        raise ValueError(f"weights {w.weights} and degree {w.degree} give a non-integral Milnor product")
    return int(v)


def milnor(F, w):
    """Milnor number of a t-free weighted-homogeneous ``F``, two ways."""
    if "t" in F.vars:
        raise ValueError("fix the parameter t before computing the Milnor number")
    if not is_w_homogeneous(F, w, w.degree):
        raise ValueError(f"{F} is not w-homogeneous of degree {w.degree}")
    gens = jacobian_gens(F, w)
    top = top_degree(w)
    if not _quotient_vanishes_beyond(gens, w, top):
        raise NonIsolatedSingularity(f"{F} does not have an isolated singularity at 0")
    dims = {}
    for e in range(0, top + 1):
        q = quotient_dimension(gens, w, e)
        if q:
            dims[e] = q
    by_dim = sum(dims.values())
    by_formula = milnor_formula(w)
    if by_dim != by_formula:
        raise MilnorMismatch(f"dimension method gives {by_dim}, formula gives {by_formula}")
    return MilnorData(by_dim, by_dim, by_formula, w.n - 1 + by_dim, w.n, dims)


def isolated_check(F, w):
    """Whether a t-free w-homogeneous ``F`` has an isolated singularity at 0."""
    if "t" in F.vars:
        raise ValueError("fix the parameter t before the isolated-singularity check")
    if F.is_zero():
        return False
    if w.n == 1:
        return F.degree_in(w.vars[0]) >= 1
    if w.n == 2:
        x, y = w.vars
        fx, fy = derive(F, x), derive(F, y)
        px = substitute(fx, {x: MPoly.var("a"), y: 1}).to_uni("a")
        py = substitute(fy, {x: MPoly.var("a"), y: 1}).to_uni("a")
        if not px and not py:
            return False
        if gcd_uni(px, py).degree > 0:
            return False
        # points with y = 0 are not covered by the chart y = 1
        on_axis = [substitute(g, {x: 1, y: 0}).constant_value() for g in (fx, fy)]
        return any(v != 0 for v in on_axis)
    return _quotient_vanishes_beyond(jacobian_gens(F, w), w, top_degree(w))
