"""Independent reference computations for the test suite.

Everything here works on ascending lists of Fractions and uses its own
Gauss-Jordan elimination.  Nothing in this module calls the lifting, matrix
or elimination code of polysol, so agreement with it is a real cross-check.
"""

from fractions import Fraction

from polysol import XPoly


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def padd(f, g):
    out = [Fraction(0)] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return trim(out)


def pmul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def pderiv(f, times=1):
    for _ in range(times):
        f = [i * f[i] for i in range(1, len(f))]
    return trim(f)


def monomial(k):
    return [Fraction(0)] * k + [Fraction(1)]


def apply_op(ps, y):
    """``sum_k ps[k] * y^(k)`` for coefficient lists."""
    out = []
    for k, p in enumerate(ps):
        out = padd(out, pmul(p, pderiv(y, k)))
    return out


def rref(rows, ncols):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    R = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [v * inv for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def image_columns(ps, n):
    """Coefficient vectors of L(x^i) for i = 0..n, as matrix rows by power."""
    cols = [apply_op(ps, monomial(i)) for i in range(n + 1)]
    height = max([len(c) for c in cols] + [1])
    return [[c[r] if r < len(c) else Fraction(0) for c in cols] for r in range(height)]


def brute_exists(ps, n):
    """Undetermined coefficients with ``c_n = 1``: is the system consistent?"""
    M = image_columns(ps, n)
    # unknowns c_0..c_{n-1}; right-hand side is -L(x^n)
    aug = [row[:n] + [-row[n]] for row in M]
    _, piv = rref(aug, n + 1)
    return n not in piv


def brute_kernel_dim(ps, n):
    """Dimension of the space of polynomial solutions of degree <= n."""
    M = image_columns(ps, n)
    _, piv = rref(M, n + 1)
    return n + 1 - len(piv)


def brute_solution(ps, n):
    """One monic degree-n solution with free lower coefficients set to 0."""
    M = image_columns(ps, n)
    aug = [row[:n] + [-row[n]] for row in M]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return None
    c = [Fraction(0)] * n + [Fraction(1)]
    for r, p in enumerate(piv):
        c[p] = R[r][n]
    return c


# --- conversions ---------------------------------------------------------

def xpoly_to_list(p):
    return [c.constant_value() for c in p.coeffs]


def list_to_xpoly(f):
    return XPoly(list(f))


# --- random data ---------------------------------------------------------

def random_coeff_list(rng, max_degree, lo=-5, hi=5, zero_prob=0.0):
    if rng.random() < zero_prob:
        return []
    d = rng.randint(0, max_degree)
    f = [Fraction(rng.randint(lo, hi)) for _ in range(d + 1)]
    if not f[-1]:
        f[-1] = Fraction(rng.choice([v for v in range(lo, hi + 1) if v]))
    return f


def random_operator_lists(rng, max_order=3, max_degree=5, zero_prob=0.25):
    """Coefficient lists p_0..p_N with p_N nonzero."""
    N = rng.randint(1, max_order)
    ps = [random_coeff_list(rng, max_degree, zero_prob=zero_prob) for _ in range(N)]
    ps.append(random_coeff_list(rng, max_degree))
    return ps


def ff_direct(a, k):
    out = 1
    for i in range(k):
        out *= a - i
    return out
