"""Real roots of univariate rational polynomials.

Roots are isolated with Sturm sequences on exact rational intervals and
refined by bisection.  Rational roots are recognised exactly: while an
isolating interval shrinks, the simplest fraction inside it is tested, and
once the interval is narrower than ``1/lc**2`` (``lc`` the leading
coefficient of the primitive integer form) no unfound rational root can
remain in it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .algebra import DEFAULT_PRECISION, BigFloat, ParamScalar, float_context, to_mpf
from .errors import ZeroPolynomialError


@dataclass(frozen=True)
class RootInterval:
    """Open-closed interval ``(lo, hi]`` holding exactly one real root."""

    lo: Fraction
    hi: Fraction

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def width(self):
        return self.hi - self.lo

    def approx(self, precision=DEFAULT_PRECISION):
        ctx = float_context(precision)
        return BigFloat(to_mpf(self.mid, ctx), precision, self.width / 2)


@dataclass
class RootSet:
    """Real roots of a polynomial.

    ``rational_roots`` holds ``(root, multiplicity)`` pairs; ``real_roots``
    holds isolating intervals for the irrational real roots, sorted.
    """

    rational_roots: list = field(default_factory=list)
    real_roots: list = field(default_factory=list)
    degree: int = 0

    def count(self):
        return len(self.rational_roots) + len(self.real_roots)

    def values(self, precision=DEFAULT_PRECISION):
        """All distinct real roots in ascending order, exact ones as Fractions."""
        items = [(r, r) for r, _ in self.rational_roots]
        items += [(iv.mid, iv.approx(precision)) for iv in self.real_roots]
        items.sort(key=lambda t: t[0])
        return [v for _, v in items]


def sturm_sequence(f):
    """Sturm sequence of ``f`` (assumed square-free) over Q."""
    seq = [upoly.strip(f), upoly.deriv(f)]
    while seq[-1]:
        r = upoly.rem(seq[-2], seq[-1])
        seq.append(upoly.neg(r))
    seq.pop()
    # only positive scaling keeps the sign pattern
    return [upoly.integer_form(s) for s in seq]


def _variations(seq, x):
    signs = [s for s in (upoly.sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq, lo, hi):
    """Number of distinct real roots in ``(lo, hi]``."""
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(ints):
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    lc = abs(ints[-1])
    return 1 + Fraction(max(abs(c) for c in ints[:-1]), lc) if len(ints) > 1 else Fraction(1)


def simplest_between(lo, hi):
    """Fraction with the smallest denominator in the closed interval ``[lo, hi]``."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    # continued-fraction walk for 0 < lo <= hi
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    rest = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


def _isolate(seq, lo, hi, n_roots):
    """Split ``(lo, hi]`` until each piece holds exactly one root."""
    if n_roots == 0:
        return []
    if n_roots == 1:
        return [RootInterval(lo, hi)]
    mid = (lo + hi) / 2
    left = count_roots(seq, lo, mid)
    return _isolate(seq, lo, mid, left) + _isolate(seq, mid, hi, n_roots - left)


def _refine(ints, iv, width):
    # the left end is excluded and may be a neighbouring root, so track the right end
    lo, hi = iv.lo, iv.hi
    shi = upoly.sign_at(ints, hi)
    if shi == 0:
        return hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = upoly.sign_at(ints, mid)
        if sm == 0:
            return mid
        if sm == shi:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi)


def _find_rational(ints, iv):
    """Exact rational root inside ``iv`` if there is one, else a narrowed interval."""
    lc = abs(ints[-1])
    limit = Fraction(1, lc * lc)
    lo, hi = iv.lo, iv.hi
    shi = upoly.sign_at(ints, hi)
    if shi == 0:
        return hi, None
    while True:
        cand = simplest_between(lo, hi)
        if lo < cand <= hi and upoly.sign_at(ints, cand) == 0:
            return cand, None
        if hi - lo < limit:
            return None, RootInterval(lo, hi)
        mid = (lo + hi) / 2
        sm = upoly.sign_at(ints, mid)
        if sm == 0:
            return mid, None
        if sm == shi:
            hi = mid
        else:
            lo = mid


def _multiplicity(f, r):
    k = 0
    lin = [-r, Fraction(1)]
    while f:
        q, rem = upoly.divmod_(f, lin)
        if rem:
            break
        f = q
        k += 1
    return k


def real_roots(q, precision=DEFAULT_PRECISION, symbol=None):
    """All real roots of ``q``.

    ``q`` is an ascending coefficient list or a univariate ``ParamScalar``
    (pass ``symbol`` if it carries more than one declared symbol).
    Irrational roots are refined until their interval width is below
    ``10**-precision`` times ``max(1, |root|)``.
    """
    if isinstance(q, ParamScalar):
        if symbol is None:
            free = q.free_symbols
            symbol = next(iter(free)) if free else "_"
        q = q.univariate(symbol)
    f = upoly.strip([Fraction(c) for c in q])
    if not f:
        raise ZeroPolynomialError("condition vanishes identically")
    out = RootSet(degree=len(f) - 1)
    if len(f) == 1:
        return out
    sqf = upoly.sqf_part(f)
    ints = upoly.primitive_int(sqf)
    seq = sturm_sequence(sqf)
    B = root_bound(ints)
    total = count_roots(seq, -B, B)
    for iv in _isolate(seq, -B, B, total):
        exact, narrowed = _find_rational(ints, iv)
        if exact is not None:
            out.rational_roots.append((exact, _multiplicity(f, exact)))
            continue
        mag = max(abs(narrowed.lo), abs(narrowed.hi), Fraction(1))
        width = mag * Fraction(1, 10 ** int(precision))
        refined = _refine(ints, narrowed, width)
        if isinstance(refined, Fraction):
            out.rational_roots.append((refined, _multiplicity(f, refined)))
        else:
            out.real_roots.append(refined)
    out.rational_roots.sort()
    out.real_roots.sort(key=lambda iv: iv.lo)
    return out
