"""k-values along polar branches and leading coefficients of f on them.

For a branch with coefficient ``a`` the k-value is

    k = F_t(a, 1, t0) / F_y(a, 1, t0)

and the k-condition asks that all branches give the same value.  The
leading coefficient of ``f_{t0}`` along the branch is ``f_{t0}(a, 1)``:
substituting ``(a s^{w1}, s^{w2})`` gives exactly ``f(a, 1) s^d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .balls import Ball
from .expr import MPoly, derive, inverse_mod, scalar_key, substitute
from .polar import branch_roots, dehomogenize, eval_at_branches

# a ball match is accepted only if doubling the precision shrinks the
# difference radius by at least this factor
REFINEMENT_GAIN = 2 ** 20

EQUAL, UNEQUAL, UNDECIDED = "equal", "unequal", "undecided"


class DegenerateBranch(ValueError):
    """F_y vanishes on a polar branch, so the k quotient is undefined."""


@dataclass
class KReport:
    t0: object
    branches: list
    k: list
    status: str
    witness: tuple = None
    excluded_axis: bool = False
    common_exact: object = None
    algebraic_equal: bool = None

    @property
    def all_equal(self):
        return {EQUAL: True, UNEQUAL: False}.get(self.status)


@dataclass
class HPReport:
    t0: object
    branches: list
    coefficients: list
    ratios: list
    zero_branches: list = field(default_factory=list)

    def pairwise_ratios(self):
        nz = [c for c in self.coefficients if not _is_zero(c)]
        return [nz[i] / nz[j] for i in range(len(nz)) for j in range(len(nz)) if i != j]


@dataclass
class ComparisonReport:
    status: str
    t0_a: object
    t0_b: object
    hp_a: HPReport
    hp_b: HPReport
    note: str = ("invariant of this tool, sound for DISTINGUISHED verdicts only; "
                 "NOT_DISTINGUISHED never claims equivalence")


DISTINGUISHED, NOT_DISTINGUISHED = "DISTINGUISHED", "NOT_DISTINGUISHED"


def _is_zero(v):
    if isinstance(v, Ball):
        return False
    return v == 0


def _k_values_only(F, w, decomp):
    t0 = decomp.t0
    Ft, Fy = derive(F, "t"), derive(F, w.vars[1])
    nums = eval_at_branches(Ft, decomp.branches, w, t0)
    dens = eval_at_branches(Fy, decomp.branches, w, t0)
    ks = []
    for b, num, den in zip(decomp.branches, nums, dens):
        if isinstance(den, Ball):
            if den.contains_zero():
                raise DegenerateBranch(f"F_y cannot be separated from 0 on branch a = {b.a!r}")
        elif den == 0:
            raise DegenerateBranch(f"F_y vanishes on branch a = {b.a}")
        ks.append(num / den)
    return ks


def _algebraic_common(F, w, decomp):
    """Exact k shared by every branch, decided in Q(t0)[a]/(q) per piece.

    On a squarefree piece q the values k(a_i) all agree iff
    ``F_t * F_y^{-1} mod q`` is a constant.  Returns (equal, value).
    """
    t0 = decomp.t0
    ft = dehomogenize(_at(derive(F, "t"), t0), w)
    fy = dehomogenize(_at(derive(F, w.vars[1]), t0), w)
    values = []
    for piece in decomp.pieces:
        q = piece.poly
        try:
            h = (ft * inverse_mod(fy, q)) % q
        except ZeroDivisionError:
            return None, None
        if h.degree > 0:
            return False, None
        values.append(h(0))
    if not values:
        return True, None
    first = values[0]
    if all(v == first for v in values):
        return True, first
    return False, None


def _at(G, t0):
    return substitute(G, {"t": t0}) if "t" in G.vars else G


def _match(src, dst):
    """Index in ``dst`` of the branch closest to each branch of ``src``."""
    out = []
    for b in src:
        if b.exact:
            out.append(next(i for i, c in enumerate(dst) if c.exact and c.a == b.a))
            continue
        ctx = b.a.ctx
        best = min((i for i, c in enumerate(dst) if not c.exact),
                   key=lambda i: ctx.fabs(dst[i].a.center - b.a.center))
        out.append(best)
    return out


def _pair_status(ki, kj, refine):
    if not isinstance(ki, Ball) and not isinstance(kj, Ball):
        return EQUAL if ki == kj else UNEQUAL
    ctx = (ki if isinstance(ki, Ball) else kj).ctx
    d = Ball.exact(ki, ctx) - Ball.exact(kj, ctx) if not isinstance(ki, Ball) else ki - kj
    if not d.contains_zero():
        return UNEQUAL
    d2 = refine()
    if d2.contains_zero() and d2.radius * REFINEMENT_GAIN <= d.radius:
        return EQUAL
    if not d2.contains_zero():
        return UNEQUAL
    return UNDECIDED


def k_values(F, w, decomp):
    """k-values on every non-axis branch and the k-equality verdict."""
    if "t" not in F.vars:
        raise ValueError("k-values need a family that depends on t")
    ks = _k_values_only(F, w, decomp)
    refined = {}

    def refine_pair(i, j):
        if "ks" not in refined:
            d2 = branch_roots(F, w, decomp.t0, decomp.precision * 2, decomp.epsilon)
            k2 = _k_values_only(F, w, d2)
            idx = _match(decomp.branches, d2.branches)
            refined["ks"] = [k2[m] for m in idx]
        a, b = refined["ks"][i], refined["ks"][j]
        ctx = (a if isinstance(a, Ball) else b).ctx
        return Ball.exact(a, ctx) - Ball.exact(b, ctx)

    status = EQUAL
    witness = None
    for i in range(len(ks)):
        for j in range(i + 1, len(ks)):
            s = _pair_status(ks[i], ks[j], lambda i=i, j=j: refine_pair(i, j))
            if s == UNEQUAL:
                status, witness = UNEQUAL, (i, j, ks[i], ks[j])
                break
            if s == UNDECIDED:
                status = UNDECIDED
        if witness:
            break
    alg_equal, common = _algebraic_common(F, w, decomp)
    if common is None and status == EQUAL and ks and not isinstance(ks[0], Ball):
        common = ks[0]
    return KReport(decomp.t0, list(decomp.branches), ks, status, witness,
                   decomp.x_axis_order > 0, common, alg_equal)


def hp_coefficients(F, w, decomp):
    """Leading coefficients ``c_i = f_{t0}(a_i, 1)`` and their ratios to c_1."""
    t0 = decomp.t0
    cs = eval_at_branches(F, decomp.branches, w, t0)
    nz = [c for c in cs if not _is_zero(c)]
    zeros = [i for i, c in enumerate(cs) if _is_zero(c)]
    ratios = [c / nz[0] for c in nz] if nz else []
    return HPReport(t0, list(decomp.branches), cs, ratios, zeros)


def _same(u, v):
    if isinstance(u, Ball) or isinstance(v, Ball):
        ctx = (u if isinstance(u, Ball) else v).ctx
        return Ball.exact(u, ctx).overlaps(Ball.exact(v, ctx))
    return u == v


def _multisets_may_agree(xs, ys):
    if len(xs) != len(ys):
        return False
    if all(not isinstance(v, Ball) for v in xs + ys):
        return sorted(xs, key=scalar_key) == sorted(ys, key=scalar_key)
    # tiny sets: look for any overlap-respecting perfect matching
    n = len(xs)
    adj = [[_same(xs[i], ys[j]) for j in range(n)] for i in range(n)]
    match = [-1] * n

    def augment(i, seen):
        for j in range(n):
            if adj[i][j] and not seen[j]:
                seen[j] = True
                if match[j] < 0 or augment(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


def compare_members(F, w, t0_a, t0_b, precision=128, epsilon=Fraction(1, 2 ** 40)):
    """Compare two family members through their leading-coefficient ratios.

    The comparator is the multiset of ratios ``c_i / c_j`` (i != j) over
    branches with nonzero coefficient, which ignores branch labelling and
    the common rescaling ``s -> lambda s``.
    """
    hp_a = hp_coefficients(F, w, branch_roots(F, w, t0_a, precision, epsilon))
    hp_b = hp_coefficients(F, w, branch_roots(F, w, t0_b, precision, epsilon))
    if t0_a == t0_b:
        return ComparisonReport(NOT_DISTINGUISHED, t0_a, t0_b, hp_a, hp_b)
    differ = (len(hp_a.zero_branches) != len(hp_b.zero_branches)
              or not _multisets_may_agree(hp_a.pairwise_ratios(), hp_b.pairwise_ratios()))
    return ComparisonReport(DISTINGUISHED if differ else NOT_DISTINGUISHED,
                            t0_a, t0_b, hp_a, hp_b)


def leading_coefficient_along(F, b, w, t0):
    """Coefficient of ``s^d`` in ``f_{t0}(a s^{w1}, s^{w2})`` by substitution.

    Exact branches only; this is the independent cross-check of
    :func:`hp_coefficients`.
    """
    x, y = w.vars
    s = MPoly.var("s")
    G = substitute(_at(F, t0), {x: s ** w.weights[0] * b.a, y: s ** w.weights[1]})
    coeffs = G.coefficients_in(("s",))
    if set(coeffs) - {(w.degree,)}:
        raise ArithmeticError(f"{G} is not a pure power s^{w.degree}")
    return coeffs.get((w.degree,), MPoly.const(0)).constant_value()
