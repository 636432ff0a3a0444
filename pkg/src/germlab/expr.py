"""Exact polynomial arithmetic and the expression parser.

Coefficients are :class:`fractions.Fraction`, or :class:`GaussRat` once a
complex parameter value has been substituted.  No floating point is used
anywhere in this module.

Two polynomial types live here:

* :class:`MPoly` -- sparse multivariate, the carrier of ``F(x, y, t)``.  The
  parameter ``t`` is an ordinary variable.
* :class:`UniPoly` -- dense univariate, used for dehomogenized polar
  polynomials and gcd work.  Its coefficients are scalars (a field) or
  ``UniPoly`` objects in another variable (the ring ``Q[t]``).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd as igcd, isqrt

Rat = Fraction

VAR_ORDER = ("x", "y", "z", "t")
SPATIAL_VARS = ("x", "y", "z")


class ParseError(ValueError):
    """Raised for malformed expressions; ``pos`` is a 0-based column."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at column {pos + 1})")
        self.message = message
        self.pos = pos


def var_key(name):
    if name in VAR_ORDER:
        return (VAR_ORDER.index(name), name)
    return (len(VAR_ORDER), name)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussRat:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(v):
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, (int, Fraction)):
            return GaussRat(v, 0)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussRat(1) / self ** (-k)
        out, base = GaussRat(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return format_complex(self.re, self.im)


def format_complex(re, im):
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}*i"
    sign = "+" if im > 0 else "-"
    return f"{re}{sign}{abs(im)}*i"


def normalize_scalar(c):
    """Canonical scalar: ints become Fractions, real GaussRats collapse."""
    if isinstance(c, GaussRat):
        return c.re if c.im == 0 else c
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def scalar_key(c):
    """Sort key for exact scalars: (real part, imaginary part)."""
    if isinstance(c, GaussRat):
        return (c.re, c.im)
    return (Fraction(c), Fraction(0))


def is_scalar(v):
    return isinstance(v, (int, Fraction, GaussRat))


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


def _build(vars_, terms):
    """Canonicalize: drop zero terms and variables that never occur."""
    terms = {e: c for e, c in terms.items() if c != 0}
    used = [i for i in range(len(vars_)) if any(e[i] for e in terms)]
    if len(used) != len(vars_):
        vars_ = tuple(vars_[i] for i in used)
        terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
    p = MPoly.__new__(MPoly)
    p.vars = tuple(vars_)
    p.terms = {e: normalize_scalar(c) for e, c in terms.items()}
    return p


class MPoly:
    """Sparse polynomial over exact scalars.

    ``vars`` holds exactly the variables that occur, sorted x, y, z, t and
    then any others alphabetically, so equal polynomials have identical
    term maps.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars_=(), terms=None):
        vars_ = tuple(vars_)
        order = sorted(range(len(vars_)), key=lambda i: var_key(vars_[i]))
        if len(set(vars_)) != len(vars_):
            raise ValueError("duplicate variable names")
        acc = {}
        for e, c in (terms or {}).items():
            if len(e) != len(vars_):
                raise ValueError("exponent vector length mismatch")
            if any(k < 0 for k in e):
                raise ValueError("negative exponent")
            e2 = tuple(e[i] for i in order)
            acc[e2] = acc.get(e2, 0) + c
        q = _build(tuple(vars_[i] for i in order), acc)
        self.vars, self.terms = q.vars, q.terms

    @classmethod
    def const(cls, c):
        return _build((), {(): c})

    @classmethod
    def var(cls, name):
        return _build((name,), {(1,): 1})

    @classmethod
    def monomial(cls, vars_, exps, coeff=1):
        return cls(vars_, {tuple(exps): coeff})

    # --- coercion helpers -------------------------------------------------

    @staticmethod
    def coerce(v):
        if isinstance(v, MPoly):
            return v
        if is_scalar(v):
            return MPoly.const(v)
        return None

    def lift(self, vars_):
        """Term map re-indexed over a superset of variables."""
        idx = [vars_.index(v) for v in self.vars]
        n = len(vars_)
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, k in zip(idx, e):
                f[i] = k
            out[tuple(f)] = c
        return out

    def _common(self, other):
        vs = tuple(sorted(set(self.vars) | set(other.vars), key=var_key))
        return vs, self.lift(vs), other.lift(vs)

    # --- ring operations --------------------------------------------------

    def __add__(self, other):
        other = MPoly.coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._common(other)
        for e, c in b.items():
            a[e] = a.get(e, 0) + c
        return _build(vs, a)

    __radd__ = __add__

    def __neg__(self):
        return _build(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = MPoly.coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = MPoly.coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = MPoly.coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._common(other)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _build(vs, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out, base = MPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        return _build(self.vars, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        other = MPoly.coerce(other)
        if other is None:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.vars

    def constant_value(self):
        if self.vars:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), Fraction(0))

    def degree_in(self, v):
        if v not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(v)
        return max(e[i] for e in self.terms)

    def exponents(self, vars_):
        """Exponent vectors restricted to ``vars_`` (others projected away)."""
        full = tuple(sorted(set(self.vars) | set(vars_), key=var_key))
        idx = [full.index(v) for v in vars_]
        return {tuple(e[i] for i in idx) for e in self.lift(full)}

    def coefficients_in(self, vars_):
        """Split into ``{exponent over vars_: MPoly in the other variables}``."""
        others = tuple(v for v in self.vars if v not in vars_)
        full = tuple(sorted(set(self.vars) | set(vars_), key=var_key))
        idx = [full.index(v) for v in vars_]
        oidx = [full.index(v) for v in others]
        groups = {}
        for e, c in self.lift(full).items():
            key = tuple(e[i] for i in idx)
            groups.setdefault(key, {})[tuple(e[i] for i in oidx)] = c
        return {k: _build(others, g) for k, g in groups.items()}

    # --- calculus and composition ----------------------------------------

    def derive(self, v):
        return derive(self, v)

    def substitute(self, bindings):
        return substitute(self, bindings)

    def __call__(self, **values):
        return substitute(self, values)

    def to_uni(self, var, coeff_var=None):
        """Univariate view in ``var``.

        With ``coeff_var`` the coefficients are :class:`UniPoly` in that
        variable; otherwise they must be scalars.
        """
        allowed = {var} | ({coeff_var} if coeff_var else set())
        extra = set(self.vars) - allowed
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)} in univariate view")
        deg = max(self.degree_in(var), 0)
        coeffs = [Fraction(0)] * (deg + 1)
        if coeff_var:
            coeffs = [UniPoly(coeff_var, ()) for _ in range(deg + 1)]
        for key, c in self.coefficients_in((var,)).items():
            if coeff_var:
                coeffs[key[0]] = c.to_uni(coeff_var)
            else:
                coeffs[key[0]] = c.constant_value()
        return UniPoly(var, coeffs)

    # --- printing ---------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order (x > y > z > t)."""
        return sorted(self.terms.items(),
                      key=lambda it: (-sum(it[0]), tuple(-k for k in it[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.vars, e) if k)
            if isinstance(c, GaussRat):
                sign, body = "+", f"({c})"
            else:
                sign, body = ("-" if c < 0 else "+"), str(abs(c))
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            if n == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def derive(p, v):
    """Formal partial derivative of ``p`` with respect to ``v``."""
    if v not in p.vars:
        return MPoly.const(0)
    i = p.vars.index(v)
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return _build(p.vars, out)


def substitute(p, bindings):
    """Simultaneous substitution ``v -> bindings[v]`` (MPoly or scalar)."""
    if not bindings:
        return p
    vals = {}
    for v, b in bindings.items():
        b = MPoly.coerce(b)
        if b is None:
            raise TypeError(f"cannot substitute {bindings[v]!r} for {v}")
        vals[v] = b
    if all(not b.vars or _is_plain_var(b) for b in vals.values()):
        return _substitute_simple(p, vals)
    images = [vals.get(v, MPoly.var(v)) for v in p.vars]
    target = set()
    for img in images:
        target |= set(img.vars)
    target = tuple(sorted(target, key=var_key))
    cache = [{0: MPoly.const(1), 1: img} for img in images]
    acc = {}
    for e, c in p.terms.items():
        term = MPoly.const(c)
        for i, k in enumerate(e):
            if k:
                if k not in cache[i]:
                    cache[i][k] = images[i] ** k
                term = term * cache[i][k]
        for f, v in term.lift(target).items():
            acc[f] = acc.get(f, 0) + v
    return _build(target, acc)


def _is_plain_var(b):
    return len(b.vars) == 1 and b.terms == {(1,): 1}


def _substitute_simple(p, vals):
    """Substitution where every image is a scalar or a bare variable."""
    names = []
    scalars = {}
    for i, v in enumerate(p.vars):
        b = vals.get(v)
        if b is None:
            names.append(v)
        elif b.vars:
            names.append(b.vars[0])
        else:
            scalars[i] = b.constant_value()
            names.append(None)
    target = tuple(sorted({n for n in names if n is not None}, key=var_key))
    where = [target.index(n) if n is not None else None for n in names]
    powers = {}
    acc = {}
    for e, c in p.terms.items():
        f = [0] * len(target)
        for i, k in enumerate(e):
            if not k:
                continue
            if where[i] is None:
                key = (i, k)
                if key not in powers:
                    powers[key] = scalars[i] ** k
                c = c * powers[key]
            else:
                f[where[i]] += k
        f = tuple(f)
        acc[f] = acc.get(f, 0) + c
    return _build(target, acc)


def variables(*names):
    return tuple(MPoly.var(n) for n in names)


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------


def _is_zero(c):
    return c == 0


class UniPoly:
    """Dense univariate polynomial, coefficients stored low degree first.

    Coefficients are exact scalars (the polynomial ring over a field) or
    ``UniPoly`` objects in a different variable (used for ``Q[t][a]``).
    Anything that is not a ``UniPoly`` in the *same* variable is treated
    as a scalar by the arithmetic operators.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.var = var
        self.coeffs = tuple(normalize_scalar(c) if is_scalar(c) else c for c in coeffs)

    @classmethod
    def const(cls, var, c):
        return cls(var, [c])

    @classmethod
    def x(cls, var):
        return cls(var, [0, 1])

    def _same(self, o):
        return isinstance(o, UniPoly) and o.var == self.var

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, o):
        if self._same(o):
            return self.coeffs == o.coeffs
        if is_scalar(o) or isinstance(o, UniPoly):
            if o == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == o
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash((self.var, self.coeffs))

    def _zero_coeff(self):
        if self.coeffs and isinstance(self.coeffs[0], UniPoly):
            return UniPoly(self.coeffs[0].var, ())
        return Fraction(0)

    def __add__(self, o):
        if not self._same(o):
            o = UniPoly(self.var, [o])
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return UniPoly(self.var, [u + v for u, v in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not self._same(o):
            if o == 0:
                return UniPoly(self.var, ())
            return UniPoly(self.var, [c * o for c in self.coeffs])
        if not self.coeffs or not o.coeffs:
            return UniPoly(self.var, ())
        out = [None] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = a * b if out[i + j] is None else out[i + j] + a * b
        return UniPoly(self.var, out)

    def __rmul__(self, o):
        if o == 0:
            return UniPoly(self.var, ())
        return UniPoly(self.var, [o * c for c in self.coeffs])

    def __pow__(self, k):
        out, base = UniPoly(self.var, [1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, v):
        """Horner evaluation at any value supporting ``+`` and ``*``."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * v + c
        return Fraction(0) if acc is None else acc

    def diff(self):
        return UniPoly(self.var, [c * i for i, c in enumerate(self.coeffs)][1:])

    def shift_down(self, k):
        """Divide by ``var**k`` (caller guarantees divisibility)."""
        return UniPoly(self.var, self.coeffs[k:])

    def low_order(self):
        """Largest k with var**k dividing self."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return 0

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc()
        return UniPoly(self.var, [c / lc for c in self.coeffs])

    def divmod(self, o):
        """Euclidean division; coefficients must form a field."""
        if not self._same(o):
            o = UniPoly(self.var, [o])
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - len(o.coeffs) + 1, 0)
        lc = o.lc()
        for i in range(len(r) - len(o.coeffs), -1, -1):
            c = r[i + len(o.coeffs) - 1] / lc
            q[i] = c
            if c != 0:
                for j, b in enumerate(o.coeffs):
                    r[i + j] = r[i + j] - c * b
        return UniPoly(self.var, q), UniPoly(self.var, r[:len(o.coeffs) - 1])

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def exquo(self, o):
        """Exact quotient; raises ``ArithmeticError`` on a nonzero remainder."""
        if not self._same(o):
            if isinstance(o, UniPoly):
                raise TypeError("variable mismatch in exquo")
            return UniPoly(self.var, [c / o for c in self.coeffs])
        q, r = self.divmod(o)
        if r:
            raise ArithmeticError(f"{o} does not divide {self}")
        return q

    def prem(self, o):
        """Pseudo-remainder: ``lc(o)**(deg self - deg o + 1) * self mod o``."""
        r = list(self.coeffs)
        m = len(o.coeffs)
        if len(r) < m:
            return UniPoly(self.var, r)
        lc = o.lc()
        for _ in range(len(r) - m + 1):
            if not r:
                break
            top = r[-1]
            r = [c * lc for c in r]
            shift = len(r) - m
            for j, b in enumerate(o.coeffs):
                r[shift + j] = r[shift + j] - top * b
            r.pop()
            while r and _is_zero(r[-1]):
                r.pop()
            if len(r) < m:
                # remaining multiplications by lc keep the result an associate
                break
        return UniPoly(self.var, r)

    def coeff_var(self):
        for c in self.coeffs:
            if isinstance(c, UniPoly):
                return c.var
        return None

    def lifted(self):
        """Same polynomial with every scalar coefficient promoted to ``Q[t]``."""
        cv = self.coeff_var()
        if cv is None:
            return self
        return UniPoly(self.var, [c if isinstance(c, UniPoly) else UniPoly(cv, [c])
                                  for c in self.coeffs])

    def content(self):
        """Monic gcd of the coefficients (coefficients in ``Q[t]``)."""
        g = None
        for c in self.lifted().coeffs:
            if c == 0:
                continue
            g = c if g is None else gcd_uni(g, c)
        if g is None:
            return None
        return g.monic()

    def primitive(self):
        if not self.coeffs:
            return self
        c = self.content()
        return UniPoly(self.var, [a.exquo(c) for a in self.lifted().coeffs])

    def __repr__(self):
        return f"UniPoly({self.var!r}, {str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = f"({c})" if isinstance(c, (UniPoly, GaussRat)) else str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_mpoly(self):
        a = MPoly.var(self.var)
        acc = MPoly.const(0)
        for k, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + (c.to_mpoly() if isinstance(c, UniPoly) else c) * a ** k
        return acc


def gcd_uni(p, q):
    """Greatest common divisor of univariate polynomials.

    Over a field of scalars the result is monic and ``gcd(p, 0) = monic(p)``.
    Over ``Q[t]`` coefficients the gcd is taken over the fraction field
    ``Q(t)`` by a primitive remainder sequence; the returned associate is
    primitive with a monic leading coefficient, and a constant gcd is
    returned as ``1``.
    """
    if isinstance(p, UniPoly) and isinstance(q, UniPoly) and p.var != q.var:
        raise ValueError("gcd of polynomials in different variables")
    var = p.var
    ring = any(isinstance(c, UniPoly) for c in p.coeffs + q.coeffs)
    if ring:
        cv = p.coeff_var() or q.coeff_var()
        p = UniPoly(var, [c if isinstance(c, UniPoly) else UniPoly(cv, [c]) for c in p.coeffs])
        q = UniPoly(var, [c if isinstance(c, UniPoly) else UniPoly(cv, [c]) for c in q.coeffs])
    if not ring:
        a, b = p, q
        while b:
            a, b = b, a % b
        return a.monic()
    if not p:
        p, q = q, p
    if not p:
        return p
    a = p.primitive()
    b = q.primitive() if q else q
    while b:
        r = a.prem(b)
        a, b = b, (r.primitive() if r else r)
    if a.degree == 0:
        return UniPoly(var, [1])
    a = a.primitive()
    lc = a.lc()
    return UniPoly(var, [c.exquo(lc.lc()) for c in a.coeffs])


def sqf_list(p):
    """Yun's squarefree decomposition over a field: ``[(q_k, k), ...]``.

    The product of ``q_k**k`` equals ``monic(p)``; every ``q_k`` is monic,
    squarefree, non-constant, and the ``q_k`` are pairwise coprime.
    """
    if p.degree <= 0:
        return []
    out = []
    a = p.monic()
    b = a.diff()
    c = gcd_uni(a, b)
    w = a // c
    y = b // c
    k = 1
    while w.degree > 0:
        z = y - w.diff()
        g = gcd_uni(w, z)
        if g.degree > 0:
            out.append((g, k))
        w = w // g
        y = z // g
        k += 1
    return out


def inverse_mod(a, m):
    """Inverse of ``a`` modulo ``m`` over a field (extended Euclid)."""
    r0, r1 = m, a % m
    s0, s1 = UniPoly(m.var, ()), UniPoly(m.var, [1])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return (s0 * (1 / r0.coeffs[0])) % m


def _divisors(n, limit=10 ** 12):
    n = abs(n)
    if n == 0 or n > limit:
        return None
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p):
    """Distinct rational roots of a polynomial with rational coefficients.

    Uses the rational root test on the integer-cleared polynomial.  Returns
    ``None`` when the coefficients are not rational or when the constant or
    leading coefficient is too large to enumerate divisors.
    """
    if any(isinstance(c, (GaussRat, UniPoly)) for c in p.coeffs):
        return None
    if p.degree <= 0:
        return []
    roots = []
    k = p.low_order()
    if k:
        roots.append(Fraction(0))
        p = p.shift_down(k)
        if p.degree <= 0:
            return roots
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    ps, qs = _divisors(ints[0]), _divisors(ints[-1])
    if ps is None or qs is None:
        return None
    seen = set()
    for a, b in product(ps, qs):
        for r in (Fraction(a, b), Fraction(-a, b)):
            if r in seen:
                continue
            seen.add(r)
            if p(r) == 0:
                roots.append(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

ALLOWED_IDENTIFIERS = VAR_ORDER


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError("decimal literals are not accepted; write a rational such as 1/4", i)
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*^/()":
            if ch == "*" and i + 1 < n and text[i + 1] == "*":
                raise ParseError("use '^' for powers, not '**'", i)
            toks.append((ch, ch, i))
            i += 1
        elif ch == ".":
            raise ParseError("decimal literals are not accepted; write a rational such as 1/4", i)
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.signed()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.signed()
            elif kind in ("int", "name", "("):
                raise ParseError("implicit multiplication is not accepted; insert '*'", self.peek()[2])
            else:
                return acc

    def signed(self):
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take()
            v = self.signed()
            return -v if kind == "-" else v
        return self.factor()

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer literal", tok[2])
            self.take()
            base = base ** tok[1]
            if self.peek()[0] == "^":
                raise ParseError("chained exponents are ambiguous; add parentheses", self.peek()[2])
        return base

    def base(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    raise ParseError("'/' is only allowed inside a rational literal such as 1/4", den[2])
                self.take()
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                return MPoly.const(Fraction(tok[1], den[1]))
            return MPoly.const(tok[1])
        if tok[0] == "name":
            self.take()
            if tok[1] not in ALLOWED_IDENTIFIERS:
                raise ParseError(f"unknown identifier {tok[1]!r} (allowed: x, y, z, t)", tok[2])
            return MPoly.var(tok[1])
        if tok[0] == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if tok[0] == "end":
            raise ParseError("unexpected end of input", tok[2])
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse(text):
    """Parse an expression in x, y, z, t into its canonical expanded MPoly."""
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    v = p.expr()
    tok = p.peek()
    if tok[0] == "/":
        raise ParseError("'/' is only allowed inside a rational literal such as 1/4", tok[2])
    p.take("end")
    return v


def parse_scalar(text):
    """Parse an exact parameter value: ``p``, ``p/q`` or ``re+im*i``.

    Decimal literals are rejected rather than silently converted.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty value", 0)
    if "." in s:
        raise ParseError("decimal literals are not accepted; write a rational such as 1/4", s.index("."))
    if s.endswith("i"):
        body = s[:-1]
        if body.endswith("*"):
            body = body[:-1]
        # split at the last sign that is not leading
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut <= 0:
            re_s, im_s = "0", body
        else:
            re_s, im_s = body[:cut], body[cut:]
        if im_s in ("", "+"):
            im_s = "1"
        elif im_s == "-":
            im_s = "-1"
        return normalize_scalar(GaussRat(_rational(re_s, text), _rational(im_s, text)))
    return _rational(s, text)


def _rational(s, original):
    try:
        num, _, den = s.partition("/")
        if not num.lstrip("+-").isdigit() or (den and not den.isdigit()):
            raise ValueError
        if den and int(den) == 0:
            raise ParseError("zero denominator", 0)
        return Fraction(int(num), int(den) if den else 1)
    except ValueError:
        raise ParseError(f"not an exact rational or complex value: {original!r}", 0) from None
