"""Family analysis: from weights to a verdict on analytic triviality.

The pipeline only emits conclusions that follow from exact or certified
computations:

* ``FailsKCondition`` -- two polar branches carry different k-values at a
  sampled t, so the family is not strongly bi-Lipschitz trivial.
* ``AnalyticallyTrivialGeneric`` -- F_t lies in the TF ideal over Q(t), so
  members are analytically equivalent away from the listed exceptional t.
* ``NotAnalyticallyTrivialByTangentCriterion`` -- F_t is outside TF for
  generic t.  Along an analytically trivial family the velocity F_t has to
  be tangent to the right-equivalence orbit, whose tangent space is TF, so
  a generic failure rules analytic triviality out.
* ``Inconclusive`` -- the hypotheses of the criteria are not met.

Strong bi-Lipschitz triviality itself is never asserted: the k-condition is
only a necessary condition for it.
"""
from __future__ import annotations

import random
import re
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

from .expr import GaussRat, MPoly, derive, parse, substitute
from .grading import detect_weights, is_w_homogeneous, orient
from .invariants import EQUAL, UNDECIDED, UNEQUAL, DegenerateBranch, hp_coefficients, k_values
from .localalg import (IdealGens, MilnorMismatch, NonIsolatedSingularity, at_t,
                       graded_membership, isolated_check, milnor, tf_gens)
from .polar import (DEFAULT_EPSILON, DEFAULT_PRECISION, DegeneratePolar, branch_roots,
                    generic_squarefree)

RANDOM_SAMPLES = 3
SPOT_CHECKS = 3

ANALYTICALLY_TRIVIAL = "AnalyticallyTrivialGeneric"
FAILS_K = "FailsKCondition"
NOT_TRIVIAL_TANGENT = "NotAnalyticallyTrivialByTangentCriterion"
INCONCLUSIVE = "Inconclusive"


class InternalInvariantError(RuntimeError):
    """Two sound computations contradict each other: a bug, not bad input."""


class InconsistentFamily(ValueError):
    """The family is not weighted homogeneous with one weight system."""


@dataclass
class Domain:
    """Simple description of U: ``lower < |t| < upper`` (either bound optional)."""

    lower: Fraction = None
    upper: Fraction = None
    text: str = ""

    @property
    def understood(self):
        return self.lower is not None or self.upper is not None

    def contains(self, t0):
        if not self.understood:
            return None
        if isinstance(t0, GaussRat):
            m2 = t0.re ** 2 + t0.im ** 2
        else:
            m2 = Fraction(t0) ** 2
        if self.lower is not None and not m2 > self.lower ** 2:
            return False
        if self.upper is not None and not m2 < self.upper ** 2:
            return False
        return True


_BOUND = r"(\d+(?:/\d+)?)"


def parse_domain(text):
    """Understands ``0<|t|<1/2``, ``|t|<2`` and ``0<|t|``; anything else is kept as text."""
    s = (text or "").replace(" ", "")
    m = re.fullmatch(rf"(?:{_BOUND}<)?\|t\|(?:<{_BOUND})?", s)
    if not m or not (m.group(1) or m.group(2)):
        return Domain(text=text or "")
    lo = Fraction(m.group(1)) if m.group(1) else None
    hi = Fraction(m.group(2)) if m.group(2) else None
    return Domain(lo, hi, text)


@dataclass
class FamilySpec:
    F: MPoly
    domain_note: str = ""
    t_samples: list = field(default_factory=list)
    precision: int = DEFAULT_PRECISION
    epsilon: Fraction = DEFAULT_EPSILON
    name: str = ""
    text: str = ""
    random_samples: int = RANDOM_SAMPLES

    @classmethod
    def from_text(cls, text, **kw):
        return cls(parse(text), text=text, **kw)


@dataclass
class ReducedPathResult:
    status: str  # "success" | "failed" | "not_applicable"
    t0: object
    reason: str = ""
    k_common: object = None
    residual: MPoly = None
    u: MPoly = None
    u_vanishes_at_origin: bool = None

    @property
    def applicable(self):
        return self.status != "not_applicable"


@dataclass
class SampleReport:
    t0: object
    origin: str
    in_domain: bool = None
    isolated: bool = None
    milnor: object = None
    polar: object = None
    k: object = None
    hp: object = None
    reduced: ReducedPathResult = None
    notes: list = field(default_factory=list)


@dataclass
class FamilyVerdict:
    kind: str
    reasons: list = field(default_factory=list)
    certificate: object = None
    exceptional_t: list = field(default_factory=list)
    t0: object = None
    witness: tuple = None
    residual: list = None
    conditional: bool = False
    strong_bilipschitz: str = ""


@dataclass
class FamilyAnalysis:
    spec: FamilySpec
    F: MPoly
    weights: object
    swapped: bool
    samples: list
    membership: object
    spot_checks: list
    verdict: FamilyVerdict
    footnotes: list


def reduced_path_check(F, w, k_common, t0, squarefree=None):
    """Try to write ``F_t - k y F_y = u F_x`` at ``t0`` with u of degree w_x.

    Applicable when the k-condition held with an exact common value and
    F_x is squarefree; ``u`` is then w-homogeneous of degree w_x, hence
    vanishes at the origin.
    """
    x, y = w.vars
    if squarefree is None:
        squarefree = generic_squarefree(F, w)
    if k_common is None:
        return ReducedPathResult("not_applicable", t0, "k-condition did not hold with an exact common value")
    if not squarefree:
        return ReducedPathResult("not_applicable", t0, "F_x is not squarefree", k_common)
    R = at_t(derive(F, "t") - MPoly.var(y) * derive(F, y) * k_common, t0)
    Fx = at_t(derive(F, x), t0)
    if R.is_zero():
        return ReducedPathResult("success", t0, "residual vanishes identically", k_common, R,
                                 MPoly.const(0), True)
    gens = IdealGens([Fx], [w.degree - w.weights[0]], ["F_x"])
    res = graded_membership(R, gens, w)
    if not res.member:
        return ReducedPathResult("failed", t0, "F_x does not divide F_t - k*y*F_y", k_common, R)
    u = res.multipliers[0]
    if not is_w_homogeneous(u, w, w.weights[0]):
        raise InternalInvariantError(f"cofactor {u} is not of weighted degree {w.weights[0]}")
    vanishes = () not in u.lift(w.vars) if u.terms else True
    return ReducedPathResult("success", t0, "", k_common, R, u, vanishes)


def _rng_for(F):
    return random.Random(zlib.crc32(str(F).encode()))


def _draw(rng, domain):
    lo = domain.lower if domain.lower is not None else (Fraction(0) if domain.upper is None else None)
    hi = domain.upper if domain.upper is not None else Fraction(1)
    q = rng.randint(3, 41)
    top = hi * q
    bottom = (lo or Fraction(0)) * q
    p_hi = int(top) - (1 if top == int(top) else 0)
    p_lo = int(bottom) + 1 if lo is not None else 0
    if p_hi < max(p_lo, 0):
        return None
    p = rng.randint(max(p_lo, 0), p_hi)
    v = Fraction(p, q) * rng.choice((1, -1))
    return v


def random_samples(F, domain, count, avoid=(), accept=lambda t0: True):
    """Deterministic pseudo-random rational samples inside the domain."""
    rng = _rng_for(F)
    out = []
    seen = set(avoid)
    for _ in range(50 * max(count, 1)):
        if len(out) == count:
            break
        v = _draw(rng, domain)
        if v is None or v in seen:
            continue
        seen.add(v)
        if domain.contains(v) is False:
            continue
        if accept(v):
            out.append(v)
    return out


def _sample_ok(F, w):
    def ok(t0):
        try:
            return isolated_check(at_t(F, t0), w)
        except ValueError:
            return False
    return ok


def _analyze_sample(F, w, t0, origin, spec, domain, squarefree):
    rep = SampleReport(t0, origin, domain.contains(t0))
    Ft0 = at_t(F, t0)
    rep.isolated = isolated_check(Ft0, w)
    if not rep.isolated:
        rep.notes.append("no isolated singularity at this t; sample skipped")
        return rep
    try:
        rep.milnor = milnor(Ft0, w)
    except NonIsolatedSingularity:
        rep.isolated = False
        rep.notes.append("Jacobian quotient does not vanish above the socle degree")
        return rep
    if w.n != 2 or w.homogeneous:
        return rep
    try:
        rep.polar = branch_roots(F, w, t0, spec.precision, spec.epsilon)
    except DegeneratePolar as exc:
        rep.notes.append(str(exc))
        return rep
    if rep.polar.x_axis_order > 0:
        rep.notes.append("the polar curve contains the axis {y = 0}; that component is "
                         "excluded from the k-values")
    rep.hp = hp_coefficients(F, w, rep.polar)
    if "t" in F.vars:
        try:
            rep.k = k_values(F, w, rep.polar)
        except DegenerateBranch as exc:
            rep.notes.append(str(exc))
            return rep
        common = rep.k.common_exact if rep.k.status == EQUAL else None
        rep.reduced = reduced_path_check(F, w, common, t0, squarefree)
    return rep


def analyze_family(spec):
    """Run the whole pipeline on a family and return a :class:`FamilyAnalysis`."""
    F0 = spec.F
    footnotes = []
    if F0.is_zero():
        raise InconsistentFamily("the zero polynomial is not a family of germs")
    w0 = detect_weights(F0)
    F, w, swapped = orient(F0, w0)
    if swapped:
        footnotes.append("weights had w_x < w_y; x and y were exchanged so that the branch "
                         "parametrization (a s^{w_x}, s^{w_y}) has w_x > w_y")
    if w.n == 2:
        footnotes.append("branch parametrization and the k-argument use the convention "
                         "w_x > w_y (weight of x strictly larger)")
    domain = parse_domain(spec.domain_note)
    if spec.domain_note:
        footnotes.append("connectivity of the parameter domain is taken from the domain "
                         "description as given, not verified")
    if spec.domain_note and not domain.understood:
        footnotes.append(f"domain {spec.domain_note!r} not understood; samples are not checked "
                         "against it and random samples are drawn from 0<|t|<1")
    if w.ambiguous:
        footnotes.append("weights are not determined by the monomials; the lexicographically "
                         "smallest positive weights were used")

    parametric = "t" in F.vars
    Ft = derive(F, "t")
    TF = tf_gens(F, w)
    membership = graded_membership(Ft, TF, w)
    exceptional = list(getattr(membership, "exceptional_t", []))

    squarefree = generic_squarefree(F, w) if (w.n == 2 and not w.homogeneous) else None
    user = [v for v in spec.t_samples]
    extra = []
    if parametric:
        extra = random_samples(F, domain if domain.understood else Domain(Fraction(0), Fraction(1)),
                               spec.random_samples, avoid=set(user) | set(exceptional),
                               accept=_sample_ok(F, w))
    elif not user:
        user = [Fraction(0)]
    samples = []
    for t0 in user:
        samples.append(_analyze_sample(F, w, t0, "user", spec, domain, squarefree))
    for t0 in extra:
        samples.append(_analyze_sample(F, w, t0, "random", spec, domain, squarefree))
    for s in samples:
        if s.in_domain is False:
            footnotes.append(f"sample t = {s.t0} lies outside the declared domain {spec.domain_note!r}")

    spot = []
    if membership.member and parametric:
        for t0 in exceptional:
            res = graded_membership(at_t(Ft, t0), tf_gens(at_t(F, t0), w), w) \
                if is_w_homogeneous(at_t(F, t0), w, w.degree) else None
            spot.append(("exceptional", t0, bool(res and res.member)))
        checks = random_samples(F, domain if domain.understood else Domain(Fraction(0), Fraction(1)),
                                SPOT_CHECKS, avoid=set(exceptional) | set(user) | set(extra),
                                accept=_sample_ok(F, w))
        for t0 in checks:
            res = graded_membership(at_t(Ft, t0), tf_gens(at_t(F, t0), w), w)
            spot.append(("random", t0, res.member))
            if not res.member:
                raise InternalInvariantError(
                    f"generic membership holds but fails at non-exceptional t = {t0}")

    if w.n >= 3:
        footnotes.append("the radical hypothesis on the ideal (F_x1, ..., F_x(n-1)) needed to "
                         "extend the k-argument beyond two variables is UNCHECKED")

    verdict = _decide(F, w, samples, membership, exceptional, parametric)
    return FamilyAnalysis(spec, F, w, swapped, samples, membership, spot, verdict, footnotes)


def _decide(F, w, samples, membership, exceptional, parametric):
    if w.n == 2:
        ks = [s.k for s in samples if s.k is not None]
        if not parametric:
            strong = "family is constant in t"
        elif w.homogeneous:
            strong = "NOT EVALUATED (homogeneous weights)"
        elif any(k.status == UNEQUAL for k in ks):
            strong = "k-condition FAILS: not strongly bi-Lipschitz trivial"
        elif any(k.status == UNDECIDED for k in ks):
            strong = "k-condition UNDECIDED at working precision"
        elif ks:
            strong = "k-condition holds at all samples (necessary condition only)"
        else:
            strong = "NOT EVALUATED (no usable sample)"
    else:
        strong = "NOT EVALUATED (the k-argument is implemented for two variables only)"

    if w.homogeneous and w.n >= 2:
        return FamilyVerdict(INCONCLUSIVE, [
            "homogeneous weights: the criteria require weighted homogeneous but not homogeneous "
            "germs"], strong_bilipschitz=strong)
    usable = [s for s in samples if s.isolated]
    if samples and not usable:
        return FamilyVerdict(INCONCLUSIVE, ["no sample has an isolated singularity"],
                             strong_bilipschitz=strong)

    conditional = any(s.polar is not None and s.polar.x_axis_order > 0 for s in samples)
    failing = next((s for s in samples if s.k is not None and s.k.status == UNEQUAL), None)
    if failing is not None and membership.member:
        raise InternalInvariantError(
            f"F_t lies in TF generically, yet the k-values differ at t = {failing.t0}")
    if failing is not None:
        return FamilyVerdict(FAILS_K, t0=failing.t0, witness=failing.k.witness,
                             conditional=conditional, strong_bilipschitz=strong,
                             reasons=(["the polar curve has a {y = 0} component that the "
                                       "k-values do not see"] if conditional else []))
    if membership.member:
        return FamilyVerdict(ANALYTICALLY_TRIVIAL, certificate=membership,
                             exceptional_t=exceptional, strong_bilipschitz=strong)
    odd = [s for s in samples if s.reduced is not None and s.reduced.status == "success"]
    if odd:
        return FamilyVerdict(INCONCLUSIVE, [
            f"the reduced-polar cofactor exists at t = {odd[0].t0} while F_t is outside TF "
            "for generic t"], strong_bilipschitz=strong)
    reasons = ["F_t is not in the ideal generated by x_i*F_xj over Q(t): the family's velocity "
               "is not tangent to the right-equivalence orbit, so members are not analytically "
               "equivalent"]
    undecided = [s for s in samples if s.k is not None and s.k.status == UNDECIDED]
    if undecided:
        reasons.append("some k comparisons were undecided at working precision")
    return FamilyVerdict(NOT_TRIVIAL_TANGENT, reasons, residual=membership.residual,
                         conditional=conditional, strong_bilipschitz=strong)


def corpus():
    """The built-in families."""
    Q = Fraction
    return [
        FamilySpec.from_text("x*y*(x-y)*(x-t*y)", domain_note="0<|t|<1",
                             t_samples=[Q(1, 2), Q(1, 3)], name="whitney"),
        FamilySpec.from_text("x^3 + y^6 - 3*t^2*x*y^4", domain_note="0<|t|<1/2",
                             t_samples=[Q(1, 4), Q(1, 3)], name="henry-parusinski"),
        FamilySpec.from_text("x^4 + y^4 + z^5 + t*x^2*y^2", domain_note="|t|<2",
                             t_samples=[Q(0), Q(1)], name="three-variable-example-k5"),
        FamilySpec.from_text("x^3 + (1+t)*y^7", domain_note="|t|<1",
                             t_samples=[Q(0), Q(1, 2)], name="control-trivial-y7"),
        FamilySpec.from_text("x^3 + 3*t*x*y^4", domain_note="0<|t|<1",
                             t_samples=[Q(1, 2), Q(1, 4)], name="control-equal-k"),
        FamilySpec.from_text("x^3 + y^6 + t*x*y^4", domain_note="|t|<3/2",
                             t_samples=[Q(1), Q(1, 2)], name="control-numeric-branches"),
    ]
