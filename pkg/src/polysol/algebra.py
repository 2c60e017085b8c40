"""Exact scalar and polynomial arithmetic.

Three layers:

* rationals are :class:`fractions.Fraction`;
* :class:`ParamScalar` is a sparse multivariate polynomial in named
  parameter symbols with rational coefficients;
* :class:`XPoly` is a dense univariate polynomial in ``x`` whose
  coefficients are ``ParamScalar``.

Big-float values come from a private :class:`mpmath.MPContext` per
precision, so two computations at different precisions never share state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational as _RationalABC

import mpmath
from mpmath.libmp import from_rational, round_nearest

from .errors import FreeSymbolError

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""

DEFAULT_PRECISION = 100


def ff(a, k):
    """Falling factorial ``a (a-1) ... (a-k+1)``; ``ff(a, 0) == 1``."""
    if k < 0:
        raise ValueError("ff: k must be nonnegative")
    out = 1
    for i in range(k):
        out *= a - i
    return out


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, _RationalABC)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"not an exact rational: {v!r}")


def is_exact(v):
    return isinstance(v, (int, Fraction, _RationalABC)) and not isinstance(v, bool)


# ---------------------------------------------------------------------------
# ParamScalar


class ParamScalar:
    """Polynomial in parameter symbols with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``symbols``) to nonzero
    ``Fraction`` coefficients.  Values built over different symbol lists are
    re-embedded into the union list on the fly.
    """

    __slots__ = ("symbols", "terms", "_hash")

    def __init__(self, terms=None, symbols=()):
        self.symbols = tuple(symbols)
        clean = {}
        if terms:
            n = len(self.symbols)
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError("exponent vector does not match symbol list")
                c = _as_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, value, symbols=()):
        value = _as_fraction(value)
        if not value:
            return cls({}, symbols)
        return cls({(0,) * len(symbols): value}, symbols)

    @classmethod
    def symbol(cls, name, symbols=None):
        symbols = tuple(symbols) if symbols is not None else (name,)
        if name not in symbols:
            raise ValueError(f"{name!r} not in symbol list {symbols}")
        exps = tuple(1 if s == name else 0 for s in symbols)
        return cls({exps: Fraction(1)}, symbols)

    @classmethod
    def _raw(cls, terms, symbols):
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj.terms = terms
        obj._hash = None
        return obj

    # alignment ----------------------------------------------------------

    def with_symbols(self, symbols):
        """Re-embed into a symbol list that contains every free symbol."""
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        index = {s: i for i, s in enumerate(symbols)}
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(symbols)
            for s, e in zip(self.symbols, exps):
                if e:
                    if s not in index:
                        raise ValueError(f"symbol {s!r} missing from {symbols}")
                    new[index[s]] = e
            terms[tuple(new)] = c
        return ParamScalar._raw(terms, symbols)

    def _coerce(self, other):
        if isinstance(other, ParamScalar):
            return other
        if is_exact(other):
            return ParamScalar.const(other, self.symbols)
        return NotImplemented

    @staticmethod
    def _align(a, b):
        if a.symbols == b.symbols:
            return a, b
        if not b.terms or b.is_constant():
            return a, b.with_symbols(a.symbols)
        if not a.terms or a.is_constant():
            return a.with_symbols(b.symbols), b
        union = a.symbols + tuple(s for s in b.symbols if s not in a.symbols)
        return a.with_symbols(union), b.with_symbols(union)

    # predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """The rational value of a symbol-free scalar."""
        free = self.free_symbols
        if free:
            raise FreeSymbolError(sorted(free))
        for c in self.terms.values():
            return c
        return Fraction(0)

    @property
    def free_symbols(self):
        out = set()
        for exps in self.terms:
            for s, e in zip(self.symbols, exps):
                if e:
                    out.add(s)
        return out

    def degree_in(self, name):
        if name not in self.symbols:
            return 0 if self.terms else NEG_INF
        i = self.symbols.index(name)
        return max((e[i] for e in self.terms), default=NEG_INF)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            v = terms.get(exps, 0) + c
            if v:
                terms[exps] = v
            else:
                terms.pop(exps, None)
        return ParamScalar._raw(terms, a.symbols)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw({e: -c for e, c in self.terms.items()}, self.symbols)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if is_exact(other):
            c = _as_fraction(other)
            if not c:
                return ParamScalar._raw({}, self.symbols)
            return ParamScalar._raw({e: v * c for e, v in self.terms.items()}, self.symbols)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return ParamScalar._raw(terms, a.symbols)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not is_exact(other):
            if isinstance(other, ParamScalar) and other.is_constant():
                other = other.constant_value()
            else:
                return NotImplemented
        other = _as_fraction(other)
        if not other:
            raise ZeroDivisionError("ParamScalar division by zero")
        return self * (1 / other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("ParamScalar powers must be nonnegative integers")
        out = ParamScalar.const(1, self.symbols)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(
                    (tuple((s, e) for s, e in zip(self.symbols, exps) if e), c)
                    for exps, c in self.terms.items()))
        return self._hash

    # substitution -------------------------------------------------------

    def bind(self, bindings):
        """Substitute exact rational values for some or all symbols."""
        idx = [(i, _as_fraction(bindings[s])) for i, s in enumerate(self.symbols)
               if s in bindings]
        if not idx:
            return self
        terms = {}
        for exps, c in self.terms.items():
            e = list(exps)
            for i, v in idx:
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                e = tuple(e)
                v = terms.get(e, 0) + c
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return ParamScalar._raw(terms, self.symbols)

    def evaluate(self, bindings, ctx):
        """Numeric value in ``ctx``; every free symbol must be bound."""
        missing = self.free_symbols - set(bindings)
        if missing:
            raise FreeSymbolError(sorted(missing))
        vals = {s: to_mpf(bindings[s], ctx) for s in self.free_symbols}
        total = ctx.zero
        for exps, c in self.terms.items():
            t = to_mpf(c, ctx)
            for s, e in zip(self.symbols, exps):
                if e:
                    t *= vals[s] ** e
            total += t
        return total

    def univariate(self, name):
        """Coefficient list (ascending) in ``name``; no other symbol may occur."""
        other = self.free_symbols - {name}
        if other:
            raise FreeSymbolError(sorted(other))
        if name not in self.symbols:
            return [self.constant_value()] if self.terms else []
        i = self.symbols.index(name)
        deg = max((e[i] for e in self.terms), default=-1)
        out = [Fraction(0)] * (deg + 1)
        for exps, c in self.terms.items():
            out[exps[i]] += c
        return out

    @classmethod
    def from_univariate(cls, coeffs, name, symbols=None):
        symbols = tuple(symbols) if symbols is not None else (name,)
        i = symbols.index(name)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * len(symbols)
                e[i] = k
                terms[tuple(e)] = _as_fraction(c)
        return cls._raw(terms, symbols)

    # rendering ----------------------------------------------------------

    def _monomials(self):
        """(coefficient, monomial string) pairs in a stable display order."""
        def key(item):
            exps, _ = item
            return (-sum(exps), tuple(-e for e in exps))

        out = []
        for exps, c in sorted(self.terms.items(), key=key):
            parts = []
            for s, e in zip(self.symbols, exps):
                if e == 1:
                    parts.append(s)
                elif e:
                    parts.append(f"{s}^{e}")
            out.append((c, "*".join(parts)))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for c, mono in self._monomials():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"ParamScalar({str(self)!r})"

    def n_terms(self):
        return len(self.terms)


def bind(s, bindings):
    """Module-level form of :meth:`ParamScalar.bind` (also accepts XPoly)."""
    return s.bind(bindings)


def as_scalar(v, symbols=()):
    if isinstance(v, ParamScalar):
        return v
    return ParamScalar.const(v, symbols)


# ---------------------------------------------------------------------------
# XPoly


class XPoly:
    """Polynomial in ``x`` with :class:`ParamScalar` coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are trimmed,
    so the zero polynomial has no stored coefficients and degree ``NEG_INF``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ParamScalar()

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else ParamScalar()

    @property
    def free_symbols(self):
        out = set()
        for c in self.coeffs:
            out |= c.free_symbols
        return out

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, XPoly):
            return other
        if isinstance(other, ParamScalar) or is_exact(other):
            return XPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, ParamScalar) or is_exact(other):
            return XPoly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return XPoly()
        out = [ParamScalar() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("XPoly powers must be nonnegative integers")
        out = XPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # calculus and substitution -----------------------------------------

    def derivative(self, times=1):
        return derivative(self, times)

    def bind(self, bindings):
        return XPoly([c.bind(bindings) for c in self.coeffs])

    def evaluate_coeffs(self, bindings, ctx):
        """Numeric coefficient list (ascending) in ``ctx``."""
        return [c.evaluate(bindings, ctx) for c in self.coeffs]

    def rational_coeffs(self):
        """Ascending list of Fractions; raises if any parameter is free."""
        return [c.constant_value() for c in self.coeffs]

    @classmethod
    def from_rationals(cls, coeffs):
        return cls([Fraction(c) for c in coeffs])

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.leading.constant_value()
        return self * (1 / lead)

    def primitive(self):
        """Integer coefficients with content 1 and positive leading coefficient."""
        cs = self.rational_coeffs()
        if not cs:
            return self
        den = lcm(*(c.denominator for c in cs))
        ints = [int(c * den) for c in cs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return XPoly.from_rationals([Fraction(v, g) for v in ints])

    def __call__(self, value):
        out = ParamScalar()
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    # rendering ----------------------------------------------------------

    def __str__(self):
        return render_plain(self)

    def __repr__(self):
        return f"XPoly({render_plain(self)!r})"


def derivative(p, times=1):
    """``times``-fold derivative of ``p`` with respect to ``x``."""
    if times < 0:
        raise ValueError("derivative: times must be nonnegative")
    if times == 0:
        return p
    cs = p.coeffs
    return XPoly([cs[i] * ff(i, times) for i in range(times, len(cs))])


def _x_power(k):
    if k == 0:
        return ""
    if k == 1:
        return "x"
    return f"x^{k}"


def render_plain(p):
    """Descending-power rendering that :func:`parse_expression` reads back."""
    if not p.coeffs:
        return "0"
    pieces = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        xp = _x_power(k)
        if c.is_constant():
            v = c.constant_value()
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if not xp:
                body = str(mag)
            elif mag == 1:
                body = xp
            else:
                body = f"{mag}*{xp}"
        elif c.n_terms() == 1:
            (v, mono), = c._monomials()
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            body = mono if mag == 1 else f"{mag}*{mono}"
            if xp:
                body += "*" + xp
        else:
            sign = "+"
            body = f"({c})"
            if xp:
                body += "*" + xp
        pieces.append((sign, body))
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# big floats


@lru_cache(maxsize=None)
def float_context(precision):
    """A private mpmath context working at ``precision`` decimal digits."""
    ctx = mpmath.MPContext()
    ctx.dps = int(precision)
    return ctx


def to_mpf(v, ctx):
    """Convert an exact rational, int, or mpf to ``ctx``; rationals round once."""
    if isinstance(v, BigFloat):
        v = v.value
    if is_exact(v):
        f = _as_fraction(v)
        return ctx.make_mpf(from_rational(f.numerator, f.denominator, ctx.prec, round_nearest))
    if isinstance(v, ParamScalar):
        return to_mpf(v.constant_value(), ctx)
    return ctx.mpf(v)


@dataclass(frozen=True)
class BigFloat:
    """A big-float value together with the precision it was computed at.

    ``error`` is an optional absolute error bound (e.g. the half-width of an
    isolating interval for a root).
    """

    value: object
    precision: int = DEFAULT_PRECISION
    error: object = None

    @property
    def ctx(self):
        return float_context(self.precision)

    def __str__(self):
        return self.ctx.nstr(self.value, self.precision)

    def __float__(self):
        return float(self.value)


def to_bigfloat(s, precision=DEFAULT_PRECISION):
    """Round a fully bound scalar to ``precision`` significant digits."""
    if isinstance(s, ParamScalar):
        s = s.constant_value()
    ctx = float_context(precision)
    return BigFloat(to_mpf(s, ctx), int(precision))
