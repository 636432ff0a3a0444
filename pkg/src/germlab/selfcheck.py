"""Reference values reproduced by ``germlab corpus``.

Each check returns ``(label, ok, detail)``; the CLI prints them as a table
and exits nonzero when any of them deviates.
"""
from __future__ import annotations

from fractions import Fraction

from .balls import Ball
from .expr import MPoly, derive, parse
from .grading import detect_weights, orient
from .invariants import DISTINGUISHED, UNEQUAL, compare_members, hp_coefficients, k_values
from .localalg import graded_membership, milnor, tf_gens
from .polar import branch_roots
from .verdict import (ANALYTICALLY_TRIVIAL, FAILS_K, INCONCLUSIVE, NOT_TRIVIAL_TANGENT,
                      analyze_family, corpus)

Q = Fraction
EPS_BOUND = Q(1, 2 ** 40)


def _fmt(vals):
    return "[" + ", ".join(str(v) for v in vals) + "]"


def _oriented(text):
    F = parse(text)
    F, w, _ = orient(F, detect_weights(F))
    return F, w


def _hp_family(analyses):
    F, w = _oriented("x^3 + y^6 - 3*t^2*x*y^4")
    d = branch_roots(F, w, Q(1, 4))
    k = k_values(F, w, d)
    hp = hp_coefficients(F, w, d)
    hp3 = hp_coefficients(F, w, branch_roots(F, w, Q(1, 3)))
    cmp_ = compare_members(F, w, Q(1, 4), Q(1, 3))
    verdict = analyses["henry-parusinski"].verdict.kind
    ok = ([b.a for b in d.branches] == [Q(1, 4), Q(-1, 4)]
          and sorted(k.k) == [Q(-2, 31), Q(2, 33)]
          and sorted(hp.coefficients) == [Q(31, 32), Q(33, 32)]
          and sorted(hp3.coefficients) == [Q(25, 27), Q(29, 27)]
          and verdict == FAILS_K and cmp_.status == DISTINGUISHED)
    return ok, f"k={_fmt(k.k)} c={_fmt(hp.coefficients)} verdict={verdict} compare={cmp_.status}"


def _positive_y7(analyses):
    F, w = _oriented("x^3 + (1+t)*y^7")
    cert = graded_membership(derive(F, "t"), tf_gens(F, w), w)
    mults = dict(zip(cert.gens.labels, cert.multipliers))
    nonzero = {lab: m for lab, m in mults.items() if m}
    expected_den = parse("t + 1")
    ok_cert = (cert.member and str(cert.denominator.to_mpoly()) == str(expected_den)
               and list(nonzero) == ["y*F_y"] and nonzero["y*F_y"] == MPoly.const(Q(1, 7))
               and cert.exceptional_t == [Q(-1)])
    m = milnor(parse("x^3 + y^7"), w)
    verdict = analyses["control-trivial-y7"].verdict.kind
    ok = ok_cert and verdict == ANALYTICALLY_TRIVIAL and m.mu == 12 \
        and m.method_dimension == m.method_formula == 12
    return ok, f"exceptional={_fmt(cert.exceptional_t)} verdict={verdict} mu={m.mu}"


def _equal_k(analyses):
    a = analyses["control-equal-k"]
    ok = True
    for s in a.samples:
        want = 1 / (4 * Q(s.t0))
        # the branches are +-sqrt(-t); equality is decided exactly in Q[a]/(a^2 + t)
        ok = ok and s.k is not None and s.k.algebraic_equal and s.k.common_exact == want \
            and all(v.contains(want) if isinstance(v, Ball) else v == want for v in s.k.k) \
            and s.reduced is not None and s.reduced.status == "success" \
            and s.reduced.residual.is_zero()
    return ok, f"samples={[str(s.t0) for s in a.samples]}"


def _milnor_suite(_):
    cases = [("x^3 + y^6", 10, 11), ("x*y*(x-y)*(x-2*y)", 9, 10),
             ("x^4 + y^4 + z^5", 36, 38)]
    ok = True
    got = []
    for text, mu, codim in cases:
        F, w = _oriented(text)
        m = milnor(F, w)
        got.append((m.mu, m.orbit_codim))
        ok = ok and m.mu == mu and m.orbit_codim == codim \
            and m.method_dimension == m.method_formula
    return ok, f"(mu, codim)={got}"


def _example(analyses):
    F, w = _oriented("x^4 + y^4 + z^5 + t*x^2*y^2")
    res = graded_membership(derive(F, "t"), tf_gens(F, w), w)
    v = analyses["three-variable-example-k5"].verdict
    ok = (not res.member and v.kind == NOT_TRIVIAL_TANGENT
          and v.strong_bilipschitz.startswith("NOT EVALUATED"))
    return ok, f"member={res.member} verdict={v.kind} strong={v.strong_bilipschitz!r}"


def _whitney(analyses):
    w = detect_weights(parse("x*y*(x-y)*(x-t*y)"))
    v = analyses["whitney"].verdict.kind
    ok = w.homogeneous and w.weights == (1, 1) and v == INCONCLUSIVE
    return ok, f"weights={w.weights} verdict={v}"


def _corpus_properties(analyses):
    ok = True
    for a in analyses.values():
        F, w = a.F, a.weights
        euler = sum((MPoly.var(v) * derive(F, v) * wi for v, wi in zip(w.vars, w.weights)),
                    MPoly.const(0))
        ok = ok and euler == F * w.degree
        if a.membership.member:
            ok = ok and a.membership.verify()
    return ok, "Euler identity and certificate resubstitution on every family"


def _numeric(_):
    F, w = _oriented("x^3 + y^6 + t*x*y^4")
    d = branch_roots(F, w, Q(-3))
    exact_ok = [b.a for b in d.branches] == [Q(1), Q(-1)]
    d1 = branch_roots(F, w, Q(1))
    balls_ok = len(d1.branches) == 2 and all(
        isinstance(b.a, Ball) and b.a.radius <= b.a.ctx.mpf(EPS_BOUND.numerator) / EPS_BOUND.denominator
        for b in d1.branches)
    k = k_values(F, w, d1)
    i, j, ki, kj = k.witness if k.witness else (0, 0, None, None)
    sep = k.status == UNEQUAL and not (ki - kj).contains_zero()
    return exact_ok and balls_ok and sep, f"t=-3 exact={exact_ok} t=1 balls={balls_ok} k={k.status}"


CHECKS = [
    ("1 HP family k-values and coefficients", _hp_family),
    ("2 positive control x^3+(1+t)y^7", _positive_y7),
    ("3 positive control x^3+3t*x*y^4", _equal_k),
    ("4 Milnor numbers and orbit codimensions", _milnor_suite),
    ("5 three-variable example, k = 5", _example),
    ("6 Whitney family", _whitney),
    ("7 corpus-wide identities", _corpus_properties),
    ("8 numeric-branch control", _numeric),
]


def run_corpus():
    """Analyze every corpus family; returns {name: FamilyAnalysis}."""
    return {spec.name: analyze_family(spec) for spec in corpus()}


def run_checks(analyses=None):
    analyses = analyses if analyses is not None else run_corpus()
    out = []
    for label, fn in CHECKS:
        try:
            ok, detail = fn(analyses)
        except Exception as exc:  # a crash is a deviation, reported as such
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((label, bool(ok), detail))
    return out
