"""Report documents: JSON-ready dictionaries and their text rendering.

Exact rationals serialize as ``"p/q"``, Gaussian rationals as
``{"re": "p/q", "im": "p/q"}`` and balls as
``{"center": {"re": ..., "im": ...}, "radius": ...}`` where the decimal
radius is rounded up and also absorbs the rounding of the printed center.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import __version__
from .balls import Ball, mpf_to_fraction
from .expr import GaussRat
from .localalg import MembershipCertificate

SCHEMA_VERSION = 1
RADIUS_DIGITS = 6


def rat(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _ceil_decimal(x, digits=RADIUS_DIGITS):
    """Decimal string >= x with ``digits`` significant digits."""
    if x <= 0:
        return "0"
    e = 0
    while x >= 10 ** (e + 1):
        e += 1
    while x < Fraction(10) ** e:
        e -= 1
    scale = Fraction(10) ** (e - digits + 1)
    mant = -((-x) // scale)  # ceiling
    if mant >= 10 ** digits:
        mant //= 10
        e += 1
        mant += 1
    s = str(mant)
    return f"{s[0]}.{s[1:]}e{e}" if len(s) > 1 else f"{s}e{e}"


def value(v):
    """Serialize an exact scalar or a ball."""
    if isinstance(v, Ball):
        ctx = v.ctx
        digits = max(int(ctx.prec * 0.30103), 10)
        re_s = mpmath.nstr(v.center.real, digits, min_fixed=-1, max_fixed=1)
        im_s = mpmath.nstr(v.center.imag, digits, min_fixed=-1, max_fixed=1)
        # printing the center to `digits` places moves it by at most this much
        slack = (abs(mpf_to_fraction(v.center.real)) + abs(mpf_to_fraction(v.center.imag))) \
            * Fraction(1, 10 ** (digits - 1))
        err = abs(Fraction(re_s) - mpf_to_fraction(v.center.real)) \
            + abs(Fraction(im_s) - mpf_to_fraction(v.center.imag))
        r = mpf_to_fraction(v.radius) + max(slack, err)
        return {"center": {"re": re_s, "im": im_s}, "radius": _ceil_decimal(r)}
    if isinstance(v, GaussRat):
        return {"re": rat(v.re), "im": rat(v.im)}
    if isinstance(v, (int, Fraction)):
        return rat(v)
    raise TypeError(f"cannot serialize {v!r}")


def weights_json(w, swapped=False):
    d = w.as_dict()
    d["swapped_xy"] = swapped
    return d


def milnor_json(m):
    if m is None:
        return None
    return {"mu": m.mu, "method_dimension": m.method_dimension,
            "method_formula": m.method_formula, "orbit_codim": m.orbit_codim,
            "quotient_dims": {str(k): v for k, v in sorted(m.quotient_dims.items())}}


def polar_json(d):
    if d is None:
        return None
    return {
        "t0": value(d.t0),
        "p": str(d.p),
        "branches": [{"a": value(b.a), "exact": b.exact, "multiplicity": b.multiplicity,
                      "clustered": b.clustered} for b in d.branches],
        "x_axis_order": d.x_axis_order,
        "y_axis_in_branches": d.y_axis_in_branches,
        "squarefree": d.squarefree,
        "precision": d.precision,
        "epsilon": rat(d.epsilon),
    }


def k_json(k):
    if k is None:
        return None
    out = {"t0": value(k.t0), "k": [value(v) for v in k.k], "status": k.status,
           "all_equal": k.all_equal, "excluded_axis": k.excluded_axis,
           "algebraic_equal": k.algebraic_equal,
           "common_exact": value(k.common_exact) if k.common_exact is not None else None,
           "witness": None}
    if k.witness:
        i, j, ki, kj = k.witness
        out["witness"] = {"i": i, "j": j, "k_i": value(ki), "k_j": value(kj)}
    return out


def hp_json(h):
    if h is None:
        return None
    return {"t0": value(h.t0), "coefficients": [value(c) for c in h.coefficients],
            "ratios_to_first": [value(r) for r in h.ratios],
            "zero_branches": list(h.zero_branches)}


def comparison_json(c):
    return {"status": c.status, "t0_a": value(c.t0_a), "t0_b": value(c.t0_b),
            "pairwise_ratios_a": [value(r) for r in c.hp_a.pairwise_ratios()],
            "pairwise_ratios_b": [value(r) for r in c.hp_b.pairwise_ratios()],
            "note": c.note}


def membership_json(m):
    base = {"target": str(m.target), "generators": [
        {"label": lab, "poly": str(g), "wdegree": d}
        for lab, g, d in zip(m.gens.labels, m.gens.gens, m.gens.degrees)]}
    if isinstance(m, MembershipCertificate):
        base.update({
            "member": True,
            "denominator": str(m.denominator),
            "multipliers": [{"generator": lab, "numerator": str(num)}
                            for lab, num in zip(m.gens.labels, m.multipliers) if num],
            "exceptional_t": [value(v) for v in m.exceptional_t],
            "exceptional_conditions": [f"{c} = 0" for c in m.exceptional_conditions],
            "resubstitution_ok": m.verify(),
        })
    else:
        base.update({"member": False, "rank": m.rank,
                     "residual": [str(v) for _, v in m.residual]})
    return base


def reduced_json(r):
    if r is None:
        return None
    return {"status": r.status, "reason": r.reason,
            "k_common": value(r.k_common) if r.k_common is not None else None,
            "residual": str(r.residual) if r.residual is not None else None,
            "u": str(r.u) if r.u is not None else None,
            "u_vanishes_at_origin": r.u_vanishes_at_origin}


def sample_json(s):
    return {"t0": value(s.t0), "origin": s.origin, "in_domain": s.in_domain,
            "isolated": s.isolated, "milnor": milnor_json(s.milnor),
            "polar": polar_json(s.polar), "k": k_json(s.k), "hp": hp_json(s.hp),
            "reduced_path": reduced_json(s.reduced), "notes": list(s.notes)}


def verdict_json(v):
    out = {"kind": v.kind, "reasons": list(v.reasons), "conditional": v.conditional,
           "strong_bilipschitz": v.strong_bilipschitz}
    if v.certificate is not None:
        out["exceptional_t"] = [value(t) for t in v.exceptional_t]
        out["certificate"] = membership_json(v.certificate)
    if v.witness is not None:
        i, j, ki, kj = v.witness
        out["t0"] = value(v.t0)
        out["witness"] = {"i": i, "j": j, "k_i": value(ki), "k_j": value(kj)}
    if v.residual is not None:
        out["residual"] = [str(r) for _, r in v.residual]
    return out


@dataclass
class ReportDocument:
    command: str
    input: dict
    weights: dict = None
    samples: list = field(default_factory=list)
    verdict: dict = None
    sections: dict = field(default_factory=dict)
    footnotes: list = field(default_factory=list)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        return {"tool_version": self.tool_version, "schema_version": self.schema_version,
                "command": self.command, "input": self.input, "weights": self.weights,
                "samples": self.samples, "verdict": self.verdict,
                "sections": self.sections, "footnotes": self.footnotes}

    @classmethod
    def from_dict(cls, d):
        return cls(command=d["command"], input=d["input"], weights=d["weights"],
                   samples=d["samples"], verdict=d["verdict"], sections=d["sections"],
                   footnotes=d["footnotes"], tool_version=d["tool_version"],
                   schema_version=d["schema_version"])

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        return render_text(self.to_dict())


def analysis_document(a, input_echo):
    return ReportDocument(
        command="analyze",
        input=input_echo,
        weights=weights_json(a.weights, a.swapped),
        samples=[sample_json(s) for s in a.samples],
        verdict=verdict_json(a.verdict),
        sections={"membership": membership_json(a.membership),
                  "spot_checks": [{"kind": k, "t0": value(t), "member": m}
                                  for k, t, m in a.spot_checks],
                  "oriented_family": str(a.F)},
        footnotes=list(a.footnotes),
    )


def _scalar_text(v):
    if v is None or v == "":
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _is_ball(d):
    return isinstance(d, dict) and set(d) == {"center", "radius"}


def _is_gauss(d):
    return isinstance(d, dict) and set(d) == {"re", "im"}


def _complex_text(re_s, im_s):
    # (re, im) keeps the exact strings of the JSON form
    return f"({re_s}, {im_s})"


def _inline(d):
    if _is_ball(d):
        return f"[{_complex_text(d['center']['re'], d['center']['im'])} +/- {d['radius']}]"
    if _is_gauss(d):
        return _complex_text(d["re"], d["im"])
    return None


def render_text(doc, indent=0):
    """Plain-text rendering of a report dictionary (same strings as the JSON)."""
    lines = []
    pad = "  " * indent
    if isinstance(doc, dict):
        for k, v in doc.items():
            inline = _inline(v)
            if inline is not None:
                lines.append(f"{pad}{k}: {inline}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}: -")
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(doc, list):
        for item in doc:
            inline = _inline(item)
            if inline is not None:
                lines.append(f"{pad}- {inline}")
            elif isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(doc)}")
    return "\n".join(line for line in lines if line != "")
