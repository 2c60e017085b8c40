"""Dense univariate polynomials over Q as ascending lists of Fractions.

Kept deliberately minimal: what the determinant and root-isolation code
needs.  Every function returns a stripped list (no trailing zeros), and the
zero polynomial is ``[]``.
"""

from fractions import Fraction
from math import gcd, lcm


def strip(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def degree(f):
    return len(f) - 1 if f else -1


def add(f, g):
    n = max(len(f), len(g))
    return strip([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                  for i in range(n)])


def neg(f):
    return [-c for c in f]


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    return strip([a * c for a in f])


def mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return strip(out)


def divmod_(f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = [Fraction(c) for c in f]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lc = g[-1]
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = f[-1] / lc
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] -= c * b
        f = strip(f)
    return strip(q), f


def rem(f, g):
    return divmod_(f, g)[1]


def deriv(f):
    return strip([i * f[i] for i in range(1, len(f))])


def monic(f):
    if not f:
        return f
    lc = f[-1]
    return [Fraction(c) / lc for c in f]


def gcd_(f, g):
    while g:
        f, g = g, rem(f, g)
    return monic(f)


def sqf_part(f):
    """Square-free part, monic."""
    if degree(f) < 1:
        return monic(f)
    g = gcd_(f, deriv(f))
    return monic(divmod_(f, g)[0])


def evaluate(f, x):
    out = Fraction(0)
    for c in reversed(f):
        out = out * x + c
    return out


def integer_form(f):
    """Positive rational multiple of ``f`` with integer coefficients and content 1."""
    if not f:
        return []
    den = lcm(*(Fraction(c).denominator for c in f))
    ints = [int(Fraction(c) * den) for c in f]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def primitive_int(f):
    """Integer multiple with content 1 and positive leading coefficient."""
    ints = integer_form(f)
    if ints and ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def sign_at(ints, x):
    """Sign of an integer-coefficient polynomial at a rational point.

    Uses the homogenized integer form ``b**d * f(a/b)`` so no Fractions are
    created along the way.
    """
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    acc = 0
    bp = 1
    for c in reversed(ints):
        acc = acc * a + c * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def interpolate(xs, ys):
    """Unique polynomial of degree < len(xs) through the points (Newton form)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-Fraction(xs[i]), Fraction(1)]), [coef[i]])
    return strip(out)
