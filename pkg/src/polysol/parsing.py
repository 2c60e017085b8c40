"""Polynomial expression parser and problem-file reader.

Expression grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := RATIONAL | 'x' | SYMBOL | '(' expr ')'

``RATIONAL`` is ``123`` or ``123/45`` written without spaces.  Juxtaposition
is not multiplication: ``2x`` is a syntax error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DEFAULT_PRECISION, ParamScalar, XPoly, render_plain
from .errors import ParseError, ProblemError, UndeclaredSymbolError
from .operator import DiffOperator

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, symbols):
        self.tokens = tokenize(text)
        self.i = 0
        self.symbols = tuple(symbols)

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.text != text:
            found = repr(t.text) if t.kind != "end" else "end of input"
            raise ParseError(f"expected {text!r}, found {found}", position=t.pos)
        return self.take()

    def parse(self):
        value = self.expr()
        t = self.tok
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r} (use '*' for products)", position=t.pos)
        return value

    def expr(self):
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.tok.text == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        if self.tok.text == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text == "^":
            self.take()
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                raise ParseError("exponent must be a nonnegative integer literal", position=t.pos)
            self.take()
            return base ** int(t.text)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return XPoly([ParamScalar.const(Fraction(t.text), self.symbols)])
        if t.kind == "name":
            self.take()
            if t.text == "x":
                return XPoly([ParamScalar((), self.symbols), ParamScalar.const(1, self.symbols)])
            if t.text not in self.symbols:
                raise UndeclaredSymbolError(f"undeclared symbol {t.text!r}", position=t.pos)
            return XPoly([ParamScalar.symbol(t.text, self.symbols)])
        if t.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        found = repr(t.text) if t.kind != "end" else "end of input"
        raise ParseError(f"unexpected {found}", position=t.pos)


def parse_expression(text, symbols=()):
    """Parse ``text`` into an :class:`XPoly` over the declared ``symbols``."""
    return _Parser(text, symbols).parse()


# ---------------------------------------------------------------------------
# problem files


@dataclass
class ProblemSpec:
    order: int
    coeffs: list
    symbols: tuple = ()
    bindings: dict = field(default_factory=dict)
    unknowns: list = field(default_factory=list)
    degree: int | None = None
    degree_range: tuple | None = None
    precision: int = DEFAULT_PRECISION
    normalize: str = "monic"

    def operator(self):
        return DiffOperator(self.coeffs)

    def degrees(self):
        """Degrees the problem asks about, as a list."""
        if self.degree is not None:
            return [self.degree]
        if self.degree_range is not None:
            lo, hi = self.degree_range
            return list(range(lo, hi + 1))
        return []


_RATIONAL = re.compile(r"^-?\d+(?:/\d+)?$")
_SYMBOL = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_LINE = [
    ("order", re.compile(r"^order\s*:\s*(\S+)$")),
    ("p", re.compile(r"^p\[\s*(\d+)\s*\]\s*:\s*(.*)$")),
    ("let", re.compile(r"^let\s+(\S+)\s*=\s*(\S+)$")),
    ("unknown", re.compile(r"^unknown\s+(\S+)$")),
    ("degrees", re.compile(r"^degrees\s*:\s*(\d+)\s*\.\.\s*(\d+)$")),
    ("degree", re.compile(r"^degree\s*:\s*(\S+)$")),
    ("precision", re.compile(r"^precision\s*:\s*(\S+)$")),
    ("normalize", re.compile(r"^normalize\s*:\s*(\S+)$")),
]


def parse_rational(text, line=None):
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ParseError(f"not a rational literal: {text!r}", line=line)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", line=line) from None


def _int(text, what, line):
    if not re.fullmatch(r"\d+", text):
        raise ParseError(f"{what} must be a nonnegative integer, got {text!r}", line=line)
    return int(text)


def parse_problem(text):
    """Read a problem file into a validated :class:`ProblemSpec`."""
    order = None
    p_text = {}
    bindings = {}
    unknowns = []
    declared = []
    singles = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for key, pattern in _LINE:
            m = pattern.match(line)
            if m:
                break
        else:
            raise ParseError(f"unrecognised line: {line!r}", line=lineno)

        if key == "p":
            k = int(m.group(1))
            if k in p_text:
                raise ProblemError(f"duplicate key p[{k}] (line {lineno})")
            p_text[k] = (m.group(2), lineno)
        elif key == "let":
            name, value = m.group(1), m.group(2)
            if not _SYMBOL.match(name) or name == "x":
                raise ParseError(f"invalid symbol name {name!r}", line=lineno)
            if name in bindings:
                raise ProblemError(f"duplicate binding for {name} (line {lineno})")
            if name in unknowns:
                raise ProblemError(f"{name} declared both bound and unknown (line {lineno})")
            bindings[name] = parse_rational(value, lineno)
            declared.append(name)
        elif key == "unknown":
            name = m.group(1)
            if not _SYMBOL.match(name) or name == "x":
                raise ParseError(f"invalid symbol name {name!r}", line=lineno)
            if name in unknowns:
                raise ProblemError(f"duplicate unknown {name} (line {lineno})")
            if name in bindings:
                raise ProblemError(f"{name} declared both bound and unknown (line {lineno})")
            unknowns.append(name)
            declared.append(name)
        else:
            slot = "degree" if key in ("degree", "degrees") else key
            if slot in singles:
                raise ProblemError(f"duplicate key {slot} (line {lineno})")
            singles[slot] = (key, m, lineno)

    if "order" not in singles:
        raise ProblemError("missing 'order:' line")
    _, m, lineno = singles["order"]
    order = _int(m.group(1), "order", lineno)

    degree = degree_range = None
    if "degree" in singles:
        key, m, lineno = singles["degree"]
        if key == "degree":
            degree = _int(m.group(1), "degree", lineno)
        else:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ProblemError(f"empty degree range {lo}..{hi} (line {lineno})")
            degree_range = (lo, hi)
    precision = DEFAULT_PRECISION
    if "precision" in singles:
        _, m, lineno = singles["precision"]
        precision = _int(m.group(1), "precision", lineno)
        if precision < 1:
            raise ProblemError("precision must be positive")
    normalize = "monic"
    if "normalize" in singles:
        _, m, lineno = singles["normalize"]
        normalize = m.group(1)
        if normalize not in ("monic", "primitive"):
            raise ParseError(f"normalize must be monic or primitive, got {normalize!r}", line=lineno)

    symbols = tuple(declared)
    coeffs = [XPoly() for _ in range(order + 1)]
    for k, (expr, lineno) in sorted(p_text.items()):
        if k > order:
            raise ProblemError(f"p[{k}] exceeds order {order} (line {lineno})")
        try:
            coeffs[k] = parse_expression(expr, symbols)
        except ParseError as e:
            raise type(e)(e.message, position=e.position, line=lineno) from None
    if order not in p_text or coeffs[order].is_zero():
        raise ProblemError(f"p[{order}] must be given and nonzero")

    return ProblemSpec(order, coeffs, symbols, bindings, unknowns, degree,
                       degree_range, precision, normalize)


def format_problem(spec):
    """Canonical problem-file text; :func:`parse_problem` reads it back."""
    lines = [f"order: {spec.order}"]
    for k, p in enumerate(spec.coeffs):
        if not p.is_zero():
            lines.append(f"p[{k}]: {render_plain(p)}")
    # declaration order fixes the symbol tuple, so replay it
    for s in spec.symbols:
        if s in spec.bindings:
            lines.append(f"let {s} = {spec.bindings[s]}")
        elif s in spec.unknowns:
            lines.append(f"unknown {s}")
    if spec.degree is not None:
        lines.append(f"degree: {spec.degree}")
    elif spec.degree_range is not None:
        lines.append(f"degrees: {spec.degree_range[0]}..{spec.degree_range[1]}")
    lines.append(f"precision: {spec.precision}")
    lines.append(f"normalize: {spec.normalize}")
    return "\n".join(lines) + "\n"
