"""Rank, nullspace and determinants over Q, Q[s] and big floats.

Matrices are nested lists, row-major, 0-based.  Exact routines accept
``int``, ``Fraction`` or symbol-free ``ParamScalar`` entries; numeric
routines work in a private mpmath context at a given decimal precision.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import upoly
from .algebra import DEFAULT_PRECISION, ParamScalar, float_context, to_mpf


def _frac(v):
    if isinstance(v, ParamScalar):
        return v.constant_value()
    return Fraction(v)


def as_rational(M):
    """Copy of ``M`` with every entry as a Fraction (raises on free symbols)."""
    return [[_frac(v) for v in row] for row in M]


def _integer_rows(M):
    """Scale each row by the lcm of its denominators.

    Returns the integer matrix and the product of the scale factors.
    """
    out = []
    total = 1
    for row in M:
        row = [_frac(v) for v in row]
        d = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * d) for v in row])
        total *= d
    return out, total


def bareiss_echelon(M):
    """Fraction-free row echelon form of an integer matrix.

    Pivots are the first nonzero entry at or below the current row (no
    magnitude search, so results are deterministic).  Returns
    ``(E, pivot_cols, swaps)``; ``E`` is a new matrix.
    """
    E = [list(row) for row in M]
    rows = len(E)
    cols = len(E[0]) if rows else 0
    pivots = []
    swaps = 0
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if E[i][c]), None)
        if p is None:
            continue
        if p != r:
            E[p], E[r] = E[r], E[p]
            swaps += 1
        prow = E[r]
        piv = prow[c]
        tail = [(j, prow[j]) for j in range(c + 1, cols) if prow[j]]
        for i in range(r + 1, rows):
            row = E[i]
            mic = row[c]
            if mic:
                new = [0] * (c + 1) + [piv * row[j] for j in range(c + 1, cols)]
                for j, v in tail:
                    new[j] -= mic * v
                row = new
            else:
                for j in range(c + 1, cols):
                    if row[j]:
                        row[j] *= piv
            if prev != 1:
                for j in range(c + 1, cols):
                    if row[j]:
                        row[j] //= prev
            row[c] = 0
            E[i] = row
        prev = piv
        pivots.append(c)
        r += 1
    return E, pivots, swaps


def rank_exact(M):
    if not M or not M[0]:
        return 0
    ints, _ = _integer_rows(M)
    return len(bareiss_echelon(ints)[1])


def nullspace_exact(M):
    """Right nullspace basis over Q.

    One vector per non-pivot column ``f``: it has a 1 at ``f``, zeros at the
    other non-pivot columns, so its last nonzero coordinate is ``f``.
    """
    if not M:
        return []
    cols = len(M[0])
    ints, _ = _integer_rows(M)
    E, pivots, _ = bareiss_echelon(ints)
    return _back_substitute(E, pivots, cols, Fraction(0), Fraction(1), lambda a, b: Fraction(a, b))


def _back_substitute(E, pivots, cols, zero, one, divide):
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            if pc > f:
                continue
            row = E[r]
            s = zero
            for j in range(pc + 1, f + 1):
                if row[j] and v[j]:
                    s += row[j] * v[j]
            v[pc] = divide(-s, row[pc]) if s else zero
        basis.append(v)
    return basis


def det_exact(M):
    """Determinant of a square rational matrix by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in M):
        raise ValueError("det_exact needs a square matrix")
    ints, scale = _integer_rows(M)
    E, pivots, swaps = bareiss_echelon(ints)
    if len(pivots) < n:
        return Fraction(0)
    d = E[n - 1][n - 1]
    if swaps % 2:
        d = -d
    return Fraction(d, scale)


# ---------------------------------------------------------------------------
# univariate parametric determinants


def _univariate_matrix(M, symbol):
    return [[(v.univariate(symbol) if isinstance(v, ParamScalar) else upoly.strip([Fraction(v)]))
             for v in row] for row in M]


def det_poly_bareiss(M, symbol):
    """Reference path: Bareiss directly over Q[symbol]; returns coefficient list."""
    n = len(M)
    if n == 0:
        return [Fraction(1)]
    P = _univariate_matrix(M, symbol)
    sign = 1
    prev = [Fraction(1)]
    for k in range(n - 1):
        if not P[k][k]:
            p = next((i for i in range(k + 1, n) if P[i][k]), None)
            if p is None:
                return []
            P[k], P[p] = P[p], P[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly.sub(upoly.mul(P[k][k], P[i][j]), upoly.mul(P[i][k], P[k][j]))
                q, r = upoly.divmod_(num, prev)
                if r:
                    raise ArithmeticError("inexact Bareiss division over Q[s]")
                P[i][j] = q
            P[i][k] = []
        prev = P[k][k]
    d = P[n - 1][n - 1]
    return upoly.scale(d, sign)


def det_univariate(M, symbol):
    """Determinant of a matrix of univariate scalars, as a ``ParamScalar``.

    Evaluates at ``D + 1`` integer points, where ``D`` sums the per-row
    maximum entry degree, and interpolates.
    """
    n = len(M)
    if n == 0:
        return ParamScalar.const(1)
    polys = _univariate_matrix(M, symbol)
    D = 0
    for row in polys:
        deg = max((len(p) - 1 for p in row), default=-1)
        if deg < 0:
            return ParamScalar()
        D += deg
    xs = list(range(D + 1))
    ys = []
    for x in xs:
        ys.append(det_exact([[upoly.evaluate(p, x) for p in row] for row in polys]))
    coeffs = upoly.interpolate(xs, ys)
    return ParamScalar.from_univariate(coeffs, symbol)


# ---------------------------------------------------------------------------
# big-float matrices


def default_tolerance(precision=DEFAULT_PRECISION):
    ctx = float_context(precision)
    return ctx.mpf(10) ** (-(int(precision) // 2))


def as_float(M, precision=DEFAULT_PRECISION, bindings=None):
    """Entries of ``M`` as mpf numbers of the given precision.

    ``ParamScalar`` entries are evaluated under ``bindings``.
    """
    ctx = float_context(precision)
    out = []
    for row in M:
        new = []
        for v in row:
            if isinstance(v, ParamScalar):
                new.append(v.evaluate(bindings or {}, ctx))
            else:
                new.append(to_mpf(v, ctx))
        out.append(new)
    return out


def numeric_echelon(M, tol=None, precision=DEFAULT_PRECISION):
    """Gaussian elimination with max-magnitude pivoting in each column.

    A column contributes a pivot only if its best remaining entry exceeds
    ``tol`` times the largest magnitude in the input.  Returns
    ``(E, pivot_cols)``.
    """
    ctx = float_context(precision)
    if tol is None:
        tol = default_tolerance(precision)
    E = [[to_mpf(v, ctx) for v in row] for row in M]
    rows = len(E)
    cols = len(E[0]) if rows else 0
    scale = max((abs(v) for row in E for v in row), default=ctx.zero)
    if not scale:
        return E, []
    cut = tol * scale
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = max(range(r, rows), key=lambda i: abs(E[i][c]))
        if abs(E[p][c]) <= cut:
            for i in range(r, rows):
                E[i][c] = ctx.zero
            continue
        E[p], E[r] = E[r], E[p]
        prow = E[r]
        piv = prow[c]
        for i in range(r + 1, rows):
            f = E[i][c] / piv
            if f:
                row = E[i]
                for j in range(c + 1, cols):
                    row[j] -= f * prow[j]
            E[i][c] = ctx.zero
        pivots.append(c)
        r += 1
    return E, pivots


def rank_numeric(M, tol=None, precision=DEFAULT_PRECISION):
    if not M or not M[0]:
        return 0
    return len(numeric_echelon(M, tol, precision)[1])


def nullspace_numeric(M, tol=None, precision=DEFAULT_PRECISION):
    if not M:
        return []
    ctx = float_context(precision)
    E, pivots = numeric_echelon(M, tol, precision)
    return _back_substitute(E, pivots, len(M[0]), ctx.zero, ctx.one, lambda a, b: a / b)


def nullspace(M, tol=None, precision=None):
    """Exact nullspace for rational input; numeric when ``precision`` is given
    or the entries are already big floats."""
    numeric = precision is not None or any(
        not isinstance(v, (int, Fraction, ParamScalar)) for row in M for v in row)
    if numeric:
        return nullspace_numeric(M, tol, precision or DEFAULT_PRECISION)
    return nullspace_exact(M)


def matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]
