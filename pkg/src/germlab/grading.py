"""Weight systems, weighted degrees and graded monomial bases."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm

from .expr import SPATIAL_VARS, MPoly, substitute

# search box for the lexicographically smallest weight vector when the
# exponent data leaves more than one degree of freedom
AMBIGUOUS_SEARCH_BOUND = 64


class NotWeightedHomogeneous(ValueError):
    """No positive integer weights make every monomial the same degree."""


@dataclass(frozen=True)
class WeightSystem:
    """Primitive positive weights on the spatial variables plus a degree.

    ``t`` is never weighted.  ``ambiguous`` is set when the exponents of the
    polynomial did not pin the weights down up to scale (a monomial, say)
    and the lexicographically smallest solution was taken.
    """

    weights: tuple
    degree: int
    vars: tuple = ("x", "y")
    ambiguous: bool = False

    def __post_init__(self):
        if len(self.weights) != len(self.vars):
            raise ValueError("one weight per spatial variable")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        if reduce(gcd, self.weights, self.degree) != 1:
            raise ValueError("weight system is not primitive")

    @property
    def n(self):
        return len(self.weights)

    @property
    def homogeneous(self):
        return len(set(self.weights)) == 1

    def wdeg(self, m):
        return wdegree(m, self)

    def weight(self, v):
        return self.weights[self.vars.index(v)]

    def as_dict(self):
        return {"vars": list(self.vars), "weights": list(self.weights),
                "degree": self.degree, "homogeneous": self.homogeneous,
                "ambiguous": self.ambiguous}


@dataclass(frozen=True)
class GradedBasis:
    weights: WeightSystem
    degree: int
    monomials: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self):
        return len(self.monomials)

    def __contains__(self, m):
        return tuple(m) in self._index

    @property
    def _index(self):
        return {m: i for i, m in enumerate(self.monomials)}

    def index(self, m):
        return self.monomials.index(tuple(m))


def spatial_vars(f):
    return tuple(v for v in f.vars if v in SPATIAL_VARS)


def wdegree(m, w):
    """Weighted degree ``sum w_i m_i`` of an exponent vector."""
    if len(m) != len(w.weights):
        raise ValueError(f"exponent vector {tuple(m)} does not match {len(w.weights)} weights")
    return sum(a * b for a, b in zip(w.weights, m))


def _nullspace(rows, n):
    """Rational nullspace basis of the matrix with the given rows."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def _primitive(v):
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0) or 1
    return [x // g for x in ints]


def detect_weights(f, vars_=None):
    """Primitive weight system making ``f`` weighted homogeneous.

    ``t`` is treated as a coefficient parameter.  Raises
    :class:`NotWeightedHomogeneous` when no positive solution exists; a
    homogeneous result (all weights equal) is reported through
    ``WeightSystem.homogeneous`` rather than raised.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no weighted degree")
    vars_ = tuple(vars_) if vars_ is not None else spatial_vars(f)
    if not vars_:
        raise NotWeightedHomogeneous("no spatial variable")
    exps = sorted(f.exponents(vars_))
    n = len(vars_)
    base = exps[0]
    rows = [[a - b for a, b in zip(e, base)] for e in exps[1:]]
    basis = _nullspace(rows, n)
    ambiguous = False
    if not basis:
        raise NotWeightedHomogeneous(f"{f} is not weighted homogeneous")
    if len(basis) == 1:
        w = _primitive(basis[0])
        if all(x < 0 for x in w):
            w = [-x for x in w]
        if not all(x > 0 for x in w):
            raise NotWeightedHomogeneous(f"{f} admits no positive weights")
    else:
        ambiguous = True
        w = None
        for cand in product(range(1, AMBIGUOUS_SEARCH_BOUND + 1), repeat=n):
            if all(sum(a * b for a, b in zip(cand, r)) == 0 for r in rows):
                w = _primitive([Fraction(c) for c in cand])
                break
        if w is None:
            raise NotWeightedHomogeneous(
                f"no positive weights up to {AMBIGUOUS_SEARCH_BOUND} for {f}")
    d = sum(a * b for a, b in zip(w, base))
    if d <= 0:
        raise NotWeightedHomogeneous(f"{f} has a constant term")
    return WeightSystem(tuple(w), d, vars_, ambiguous)


def weighted_degree_of(p, w):
    """Common weighted degree of ``p``'s monomials, or ``None`` if mixed."""
    degs = {wdegree(e, w) for e in p.exponents(w.vars)}
    if len(degs) != 1:
        return None
    return degs.pop()


def is_w_homogeneous(p, w, degree=None):
    if p.is_zero():
        return True
    d = weighted_degree_of(p, w)
    return d is not None and (degree is None or d == degree)


def graded_basis(w, e):
    """All exponent vectors of weighted degree ``e``, lex-descending."""
    if e < 0:
        return GradedBasis(w, e, [])
    out = []

    def rec(i, remaining, prefix):
        if i == len(w.weights) - 1:
            if remaining % w.weights[i] == 0:
                out.append(tuple(prefix) + (remaining // w.weights[i],))
            return
        for k in range(remaining // w.weights[i], -1, -1):
            rec(i + 1, remaining - k * w.weights[i], prefix + [k])

    rec(0, e, [])
    return GradedBasis(w, e, out)


def orient(F, w):
    """Put a two-variable family in the ``w_x > w_y`` convention.

    Returns ``(F, w, swapped)``; when ``w_x < w_y`` the roles of x and y are
    exchanged.  Other shapes are returned unchanged.
    """
    if w.n != 2 or w.weights[0] >= w.weights[1]:
        return F, w, False
    a, b = w.vars
    G = substitute(F, {a: MPoly.var(b), b: MPoly.var(a)})
    return G, WeightSystem(w.weights[::-1], w.degree, w.vars, w.ambiguous), True
