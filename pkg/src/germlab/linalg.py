"""Fraction-free Gauss-Jordan elimination over an integral domain.

Entries are either exact scalars or ``UniPoly`` objects in ``t``; the only
division performed is the exact Bareiss division by the previous pivot.
"""
from __future__ import annotations

from operator import truediv

from .expr import UniPoly


def exact_div(a, b):
    if isinstance(a, UniPoly) or isinstance(b, UniPoly):
        if not isinstance(a, UniPoly):
            a = UniPoly(b.var, [a])
        return a.exquo(b)
    return truediv(a, b)


def _size(e):
    return e.degree if isinstance(e, UniPoly) else 0


def fraction_free_rref(m, ncols, one=1):
    """Reduce the first ``ncols`` columns of ``m`` in place.

    Every row operation is applied to the whole row, so extra columns on the
    right (right-hand sides) are carried along.  On return each pivot row
    has the common pivot ``det`` on its diagonal and zeros elsewhere in the
    pivot columns.  Among candidate pivots the entry of smallest
    ``t``-degree wins, ties broken by row index, which keeps the choice
    deterministic.

    Returns ``(pivot_columns, det)``.
    """
    prev = one
    r = 0
    pivots = []
    nrows = len(m)
    for c in range(ncols):
        cands = [i for i in range(r, nrows) if m[i][c] != 0]
        if not cands:
            continue
        best = min(cands, key=lambda i: (_size(m[i][c]), i))
        m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            row = m[i]
            prow = m[r]
            m[i] = [exact_div(piv * a - f * b, prev) for a, b in zip(row, prow)]
        pivots.append(c)
        prev = piv
        r += 1
        if r == nrows:
            break
    for i, c in enumerate(pivots):
        if m[i][c] != prev:
            raise ArithmeticError("fraction-free elimination lost the common pivot")
    return pivots, prev


def rank(rows, ncols):
    m = [list(r) for r in rows]
    if not m:
        return 0
    pivots, _ = fraction_free_rref(m, ncols)
    return len(pivots)
