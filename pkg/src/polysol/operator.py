"""Differential operators with polynomial coefficients and their matrices.

``L = sum_k p_k(x) D^k``.  With ``m = max(0, max_k(deg p_k - k))`` the
substitution ``y = D^m z`` turns ``L y = 0`` into ``H z = 0`` where
``H = sum_k a_k D^k`` and ``a_k = p_{k-m}``.  ``H`` maps every space of
polynomials of degree <= n into itself, so its matrix on the monomial basis
is upper triangular.

All matrices here are plain nested lists, 0-based: ``A[i][j]`` is the
coefficient of ``x**i`` in ``H(x**j)``.
"""

from __future__ import annotations

from .algebra import NEG_INF, ParamScalar, XPoly, derivative, ff, to_mpf


class DiffOperator:
    """``sum_k coeffs[k] * D^k`` with trailing zero coefficients trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, XPoly) else XPoly([c]) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("the zero operator has no well-defined order")
        self.coeffs = tuple(cs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def free_symbols(self):
        out = set()
        for p in self.coeffs:
            out |= p.free_symbols
        return out

    def bind(self, bindings):
        return DiffOperator([p.bind(bindings) for p in self.coeffs])

    def __call__(self, y):
        return apply(self, y)

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        parts = ", ".join(str(p) for p in self.coeffs)
        return f"DiffOperator([{parts}])"


class LiftedOperator:
    """``H = L o D^m``; ``a[k]`` is the coefficient of ``D^k`` for 0 <= k <= m+N.

    ``a[k]`` vanishes for ``k < m``.  When ``m == 0`` the multiplication term
    ``a[0] = p_0`` is kept, which makes column ``j`` of the matrix the
    coefficient vector of ``L(x**j)``.
    """

    __slots__ = ("source", "m", "a")

    def __init__(self, source, m, a):
        self.source = source
        self.m = m
        self.a = tuple(a)

    @property
    def order(self):
        return len(self.a) - 1


def shift_order(L):
    """``max(0, max_i(deg p_i - i))``."""
    m = 0
    for i, p in enumerate(L.coeffs):
        d = p.degree
        if d != NEG_INF:
            m = max(m, d - i)
    return m


def lift(L):
    m = shift_order(L)
    zero = XPoly()
    a = [zero] * m + list(L.coeffs)
    return LiftedOperator(L, m, a)


def build_A(H, n):
    """The ``(n+1) x (n+1)`` upper triangular matrix of ``H`` on degree <= n."""
    size = n + 1
    A = [[ParamScalar() for _ in range(size)] for _ in range(size)]
    for j in range(size):
        for k, ak in enumerate(H.a):
            if k > j:
                break
            f = ff(j, k)
            for h, c in enumerate(ak.coeffs):
                if c.is_zero():
                    continue
                i = j - k + h
                if i < size:
                    A[i][j] = A[i][j] + c * f
    return A


def build_M(L, n, m=None):
    """The pair ``(M_n, M_n')`` built straight from the ``p`` coefficients.

    ``M_n`` is ``(n+m+1) x (n+1)`` with entry
    ``sum_t p_{t, t+i-j} * ff(j+m, t+m)`` (0-based ``i, j``); ``M_n'`` drops
    its last column.  Equal to ``build_A(lift(L), n+m)`` minus its first
    ``m`` columns.
    """
    if m is None:
        m = shift_order(L)
    rows, cols = n + m + 1, n + 1
    M = [[ParamScalar() for _ in range(cols)] for _ in range(rows)]
    for j in range(cols):
        for t in range(min(j, L.order) + 1):
            f = ff(j + m, t + m)
            if not f:
                continue
            pt = L.coeffs[t]
            for i in range(rows):
                c = pt.coeff(t + i - j) if t + i - j >= 0 else None
                if c is not None and not c.is_zero():
                    M[i][j] = M[i][j] + c * f
    Mp = [row[:-1] for row in M]
    return M, Mp


def eigenvalue_lambda(H, n):
    """Coefficient of ``x**n`` in ``H(x**n)``: ``sum_k a_{k,k} ff(n, k)``."""
    out = ParamScalar()
    for k, ak in enumerate(H.a):
        if k > n:
            break
        c = ak.coeff(k)
        if not c.is_zero():
            out = out + c * ff(n, k)
    return out


def apply(L, y):
    """Exact ``sum_k p_k * y^(k)``."""
    out = XPoly()
    for k, p in enumerate(L.coeffs):
        if p.is_zero():
            continue
        dy = derivative(y, k)
        if dy.is_zero():
            break
        out = out + p * dy
    return out


def apply_numeric(L, ycoeffs, bindings, ctx):
    """Numeric ``L y`` for a big-float coefficient list ``ycoeffs``.

    Returns ``(residual_coeffs, scale)`` where ``scale`` is the largest
    coefficient magnitude among the individual products ``p_k * y^(k)``.
    """
    ys = [to_mpf(c, ctx) for c in ycoeffs]
    width = 0
    terms = []
    for k, p in enumerate(L.coeffs):
        pk = p.evaluate_coeffs(bindings, ctx)
        dy = [ys[i] * ff(i, k) for i in range(k, len(ys))]
        if not pk or not dy:
            continue
        prod = [ctx.zero] * (len(pk) + len(dy) - 1)
        for a, u in enumerate(pk):
            if u:
                for b, v in enumerate(dy):
                    prod[a + b] += u * v
        terms.append(prod)
        width = max(width, len(prod))
    res = [ctx.zero] * width
    scale = ctx.zero
    for prod in terms:
        for i, v in enumerate(prod):
            res[i] += v
            scale = max(scale, abs(v))
    return res, scale
