"""Command-line front end.

    germlab analyze --expr "x^3 + y^6 - 3*t^2*x*y^4" --t 1/4 --t 1/3 --json

Exit codes: 0 report produced, 2 input error, 3 I/O error, 4 internal
invariant violation (including a corpus value that deviates).
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import __version__
from .balls import RootIsolationError
from .expr import MPoly, ParseError, derive, parse, parse_scalar, substitute
from .grading import NotWeightedHomogeneous, detect_weights, orient
from .invariants import DegenerateBranch, compare_members, hp_coefficients, k_values
from .localalg import (MilnorMismatch, NonIsolatedSingularity, at_t, graded_membership,
                       isolated_check, milnor, tf_gens)
from .polar import DEFAULT_EPSILON, DEFAULT_PRECISION, DegeneratePolar, branch_roots
from .report import (ReportDocument, analysis_document, comparison_json, hp_json, k_json,
                     membership_json, milnor_json, polar_json, value, weights_json)
from .selfcheck import run_checks, run_corpus
from .verdict import FamilySpec, InternalInvariantError, analyze_family

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_INTERNAL = 0, 2, 3, 4
MIN_PRECISION = 64


class InputError(ValueError):
    pass


def _epsilon(text):
    s = text.replace(" ", "")
    m = re.fullmatch(r"2\^(-\d+)", s)
    try:
        eps = Fraction(2) ** int(m.group(1)) if m else Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"epsilon {text!r} is not 2^-k or p/q")
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    if eps.numerator != 1 or eps.denominator & (eps.denominator - 1):
        raise argparse.ArgumentTypeError("epsilon must be dyadic, e.g. 2^-40")
    return eps


def _precision(text):
    try:
        bits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision {text!r} is not an integer")
    if bits < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be at least {MIN_PRECISION} bits")
    return bits


def _t_value(text):
    try:
        return parse_scalar(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--expr", help="family F(x, y[, z], t) as an expression")
    src.add_argument("--file", help="file: expression on line 1, then 't = v' / 'domain = text'")
    common.add_argument("--t", dest="t", action="append", type=_t_value, default=[],
                        metavar="VALUE", help="parameter sample, p/q or re+im*i (repeatable)")
    common.add_argument("--precision", type=_precision, default=DEFAULT_PRECISION,
                        help="working precision in bits (default 128)")
    common.add_argument("--epsilon", type=_epsilon, default=DEFAULT_EPSILON,
                        help="root cluster radius, dyadic (default 2^-40)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--out", help="write the report to this path")
    common.add_argument("--allow-constant", action="store_true",
                        help="accept an input that does not depend on t")

    parser = argparse.ArgumentParser(prog="germlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"germlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="full verdict for a family")
    sub.add_parser("polar", parents=[common], help="polar branches at each --t")
    sub.add_parser("invariants", parents=[common], help="k-values and leading coefficients")
    sub.add_parser("milnor", parents=[common], help="Milnor number and orbit codimension")
    mem = sub.add_parser("membership", parents=[common], help="graded membership in TF")
    mem.add_argument("--target", help="polynomial to test (default F_t)")
    sub.add_parser("corpus", parents=[common], help="run the built-in families")
    return parser


def read_input(args):
    """Returns (expression text, file t samples, domain text)."""
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        lines = [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise InputError(f"{args.file} is empty")
        ts, domain = [], ""
        for ln in lines[1:]:
            key, sep, val = ln.partition("=")
            key = key.strip()
            if not sep or key not in ("t", "domain"):
                raise InputError(f"{args.file}: expected 't = <value>' or 'domain = <text>', got {ln!r}")
            if key == "t":
                ts.append(parse_scalar(val.strip()))
            else:
                domain = val.strip()
        return lines[0], ts, domain
    if args.expr is None:
        raise InputError("give the family with --expr or --file")
    return args.expr, [], ""


def _family(args):
    text, file_ts, domain = read_input(args)
    F = parse(text)
    if "t" not in F.vars and not args.allow_constant:
        raise InputError(f"{text!r} does not depend on t; pass --allow-constant to accept it")
    return F, text, file_ts + list(args.t), domain


def _echo(args, text, ts, domain):
    return {"expression": text, "t_samples": [value(t) for t in ts], "domain": domain,
            "precision": args.precision, "epsilon": value(args.epsilon),
            "source": args.file or "--expr"}


def _oriented(F):
    w = detect_weights(F)
    return orient(F, w)


def _need_t(F, ts):
    if ts:
        return ts
    if "t" in F.vars:
        raise InputError("this command needs at least one --t value")
    return [Fraction(0)]


def cmd_analyze(args):
    F, text, ts, domain = _family(args)
    spec = FamilySpec(F, domain_note=domain, t_samples=ts, precision=args.precision,
                      epsilon=args.epsilon, text=text)
    return analysis_document(analyze_family(spec), _echo(args, text, ts, domain))


def cmd_polar(args):
    F, text, ts, domain = _family(args)
    G, w, swapped = _oriented(F)
    if w.n != 2:
        raise InputError("polar branches are computed for two spatial variables")
    if w.homogeneous:
        raise InputError("homogeneous weights: branches are not of the form (a s^w1, s^w2)")
    rows = [polar_json(branch_roots(G, w, t0, args.precision, args.epsilon))
            for t0 in _need_t(G, ts)]
    return ReportDocument("polar", _echo(args, text, ts, domain),
                          weights_json(w, swapped), samples=rows)


def cmd_invariants(args):
    F, text, ts, domain = _family(args)
    G, w, swapped = _oriented(F)
    if w.n != 2 or w.homogeneous:
        raise InputError("k-values need two spatial variables and non-homogeneous weights")
    ts = _need_t(G, ts)
    rows = []
    for t0 in ts:
        d = branch_roots(G, w, t0, args.precision, args.epsilon)
        rows.append({"t0": value(t0),
                     "k": k_json(k_values(G, w, d)) if "t" in G.vars else None,
                     "hp": hp_json(hp_coefficients(G, w, d))})
    comps = [comparison_json(compare_members(G, w, a, b, args.precision, args.epsilon))
             for a, b in zip(ts, ts[1:])]
    return ReportDocument("invariants", _echo(args, text, ts, domain), weights_json(w, swapped),
                          samples=rows, sections={"comparisons": comps})


def cmd_milnor(args):
    F, text, ts, domain = _family(args)
    G, w, swapped = _oriented(F)
    rows = []
    for t0 in _need_t(G, ts):
        Ft0 = at_t(G, t0)
        row = {"t0": value(t0), "isolated": isolated_check(Ft0, w), "milnor": None}
        if row["isolated"]:
            row["milnor"] = milnor_json(milnor(Ft0, w))
        rows.append(row)
    return ReportDocument("milnor", _echo(args, text, ts, domain),
                          weights_json(w, swapped), samples=rows)


def cmd_membership(args):
    F, text, ts, domain = _family(args)
    G, w, swapped = _oriented(F)
    if args.target:
        target = parse(args.target)
        if swapped:
            target = substitute(target, {"x": MPoly.var("y"), "y": MPoly.var("x")})
    else:
        target = derive(G, "t")
    res = graded_membership(target, tf_gens(G, w), w)
    rows = []
    for t0 in ts:
        r = graded_membership(at_t(target, t0), tf_gens(at_t(G, t0), w), w)
        rows.append({"t0": value(t0), "member": r.member})
    return ReportDocument("membership", _echo(args, text, ts, domain), weights_json(w, swapped),
                          samples=rows, sections={"membership": membership_json(res)})


def cmd_corpus(args):
    analyses = run_corpus()
    checks = run_checks(analyses)
    table = [{"family": name, "expression": a.spec.text, "domain": a.spec.domain_note,
              "weights": list(a.weights.weights), "degree": a.weights.degree,
              "verdict": a.verdict.kind} for name, a in analyses.items()]
    doc = ReportDocument("corpus", {"expression": None, "source": "built-in"},
                         sections={"families": table,
                                   "checks": [{"criterion": lab, "ok": ok, "detail": det}
                                              for lab, ok, det in checks]})
    return doc, all(ok for _, ok, _ in checks)


def corpus_table(doc):
    fams = doc.sections["families"]
    w1 = max(len(f["family"]) for f in fams)
    lines = [f"{'family':<{w1}}  {'weights':<10}  verdict"]
    for f in fams:
        ws = ",".join(map(str, f["weights"])) + f";{f['degree']}"
        lines.append(f"{f['family']:<{w1}}  {ws:<10}  {f['verdict']}")
    lines.append("")
    for c in doc.sections["checks"]:
        lines.append(f"[{'PASS' if c['ok'] else 'FAIL'}] {c['criterion']}: {c['detail']}")
    return "\n".join(lines)


COMMANDS = {"analyze": cmd_analyze, "polar": cmd_polar, "invariants": cmd_invariants,
            "milnor": cmd_milnor, "membership": cmd_membership}

INPUT_ERRORS = (InputError, ParseError, NotWeightedHomogeneous, NonIsolatedSingularity,
                DegeneratePolar, DegenerateBranch, ValueError)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    ok = True
    try:
        if args.command == "corpus":
            doc, ok = cmd_corpus(args)
            text = doc.to_json() if args.json else corpus_table(doc)
        else:
            doc = COMMANDS[args.command](args)
            text = doc.to_json() if args.json else doc.to_text()
    except RootIsolationError as exc:
        print(f"germlab: {exc}; try a higher --precision", file=sys.stderr)
        return EXIT_INPUT
    except (InternalInvariantError, MilnorMismatch, ArithmeticError) as exc:
        print(f"germlab: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ParseError as exc:
        print(f"germlab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"germlab: {exc}", file=sys.stderr)
        return EXIT_IO
    except INPUT_ERRORS as exc:
        print(f"germlab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"germlab: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
