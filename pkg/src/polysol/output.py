"""Rendering of results as plain text, flat key/value text, or LaTeX.

The structured format is one ``key = value`` pair per line.  Values are
``true``/``false``, integers, exact rationals ``a/b``, or numerics written
``<decimal>~<digits>`` (the decimal string and the precision it carries).
:func:`parse_structured` reads it back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BigFloat, ParamScalar, XPoly, float_context, render_plain
from .solver import NumericPoly

FORMATS = ("plain", "structured", "latex")

GREEK = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota",
    "kappa", "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi",
    "chi", "psi", "omega",
}


@dataclass(frozen=True)
class OutputDocument:
    format: str
    text: str

    def __str__(self):
        return self.text


# ---------------------------------------------------------------------------
# value encoding


def encode_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, BigFloat):
        return f"{v.ctx.nstr(v.value, v.precision)}~{v.precision}"
    if isinstance(v, ParamScalar):
        return str(v.constant_value()) if v.is_constant() else str(v)
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    if hasattr(v, "context"):  # bare mpf
        prec = v.context.dps
        return f"{v.context.nstr(v, prec)}~{prec}"
    return str(v)


_RAT = re.compile(r"^-?\d+(?:/\d+)?$")
_NUM = re.compile(r"^(.+)~(\d+)$")


def decode_value(text):
    text = text.strip()
    if text in ("true", "false"):
        return text == "true"
    if _RAT.match(text):
        return Fraction(text)
    m = _NUM.match(text)
    if m:
        prec = int(m.group(2))
        ctx = float_context(prec)
        return BigFloat(ctx.mpf(m.group(1)), prec)
    return text


def parse_structured(text):
    """Flat ``{key: decoded value}`` mapping from structured output."""
    out = {}
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, _, value = line.partition(" = ")
        out[key.strip()] = decode_value(value)
    return out


def structured_solutions(doc):
    """``{i: [coeff_0, coeff_1, ...]}`` from a parsed structured document."""
    sols = {}
    for key, value in doc.items():
        m = re.match(r"^solution\.(\d+)\.coeff\.(\d+)$", key)
        if m:
            sols.setdefault(int(m.group(1)), {})[int(m.group(2))] = value
    return {i: [cs[j] for j in range(max(cs) + 1)] for i, cs in sols.items()}


# ---------------------------------------------------------------------------
# polynomials


def normalized(y, mode):
    if mode == "primitive" and isinstance(y, XPoly):
        return y.primitive()
    return y


def coeff_values(y):
    if isinstance(y, NumericPoly):
        return [BigFloat(c, y.precision) for c in y.coeffs]
    return [c.constant_value() if c.is_constant() else c for c in y.coeffs]


def poly_plain(y):
    if isinstance(y, NumericPoly):
        return str(y)
    return render_plain(y)


def _latex_symbol(s):
    return "\\" + s if s in GREEK else s


def _latex_rational(v):
    v = Fraction(v)
    if v.denominator == 1:
        return str(abs(v.numerator))
    return f"\\frac{{{abs(v.numerator)}}}{{{v.denominator}}}"


def _latex_scalar(c):
    """LaTeX for a ParamScalar; returns (sign, body) with body unsigned when possible."""
    if c.is_constant():
        v = c.constant_value()
        return ("-" if v < 0 else "+"), _latex_rational(v)
    mons = c._monomials()
    parts = []
    for k, (v, mono) in enumerate(mons):
        body = " ".join(
            _latex_symbol(f.split("^")[0]) + (f"^{{{f.split('^')[1]}}}" if "^" in f else "")
            for f in mono.split("*")) if mono else ""
        mag = "" if (abs(v) == 1 and body) else _latex_rational(v)
        sign = "-" if v < 0 else "+"
        piece = f"{mag} {body}".strip()
        parts.append(("-" if sign == "-" else "") + piece if k == 0 else f" {sign} {piece}")
    return "+", "\\left(" + "".join(parts) + "\\right)"


def poly_latex(y, digits=30):
    if isinstance(y, NumericPoly):
        ctx = float_context(y.precision)
        items = [(k, ("-" if c < 0 else "+"), ctx.nstr(abs(c), digits))
                 for k, c in enumerate(y.coeffs) if c]
    else:
        items = []
        for k, c in enumerate(y.coeffs):
            if not c.is_zero():
                sign, body = _latex_scalar(c)
                items.append((k, sign, body))
    if not items:
        return "0"
    out = ""
    for idx, (k, sign, body) in enumerate(reversed(items)):
        xp = "" if k == 0 else ("x" if k == 1 else f"x^{{{k}}}")
        if xp and body == "1":
            body = ""
        term = f"{body} {xp}".strip() if body else xp
        if idx == 0:
            out = ("-" if sign == "-" else "") + term
        else:
            out += f" {sign} {term}"
    return out


# ---------------------------------------------------------------------------
# documents


def _doc(fmt, lines):
    return OutputDocument(fmt, "\n".join(lines) + "\n")


def _solution_lines(sols, fmt, normalize, start=0, candidate=None):
    lines = []
    for i, y in enumerate(sols, start):
        y = normalized(y, normalize)
        if fmt == "structured":
            lines.append(f"solution.{i}.degree = {y.degree}")
            if candidate is not None:
                lines.append(f"solution.{i}.candidate = {candidate}")
            for j, c in enumerate(coeff_values(y)):
                lines.append(f"solution.{i}.coeff.{j} = {encode_value(c)}")
        elif fmt == "latex":
            lines.append(f"y_{{{i}}}(x) = {poly_latex(y)}")
        else:
            lines.append(f"y = {poly_plain(y)}")
    return lines


def render_exists(rep, fmt="plain"):
    if fmt == "structured":
        return _doc(fmt, [
            f"degree = {rep.degree}",
            f"m = {rep.m}",
            f"exists = {encode_value(rep.exists)}",
            f"rank_M = {rep.rank_M}",
            f"rank_M_prime = {rep.rank_M_prime}",
            f"lambda = {encode_value(rep.lambda_value)}",
        ])
    if fmt == "latex":
        rel = "=" if rep.exists else "\\neq"
        return _doc(fmt, [
            f"\\operatorname{{rank}}(M_{{{rep.degree}}}) = {rep.rank_M} {rel} "
            f"{rep.rank_M_prime} = \\operatorname{{rank}}(M'_{{{rep.degree}}})",
        ])
    rel = "=" if rep.exists else "!="
    if rep.exists:
        head = f"exists: yes, rank(M_n)=rank(M'_n)={rep.rank_M}"
    else:
        head = f"exists: no, rank(M_n)={rep.rank_M} {rel} rank(M'_n)={rep.rank_M_prime}"
    return _doc(fmt, [
        head,
        f"degree n = {rep.degree}, shift order m = {rep.m}",
        f"lambda_(n+m) = {encode_value(rep.lambda_value)}",
    ])


def render_solutions(n, sols, fmt="plain", normalize="monic"):
    if fmt == "structured":
        return _doc(fmt, [f"degree = {n}", f"count = {len(sols)}"]
                    + _solution_lines(sols, fmt, normalize))
    if not sols:
        return _doc(fmt, [f"no polynomial solution of degree {n}"])
    return _doc(fmt, _solution_lines(sols, fmt, normalize))


def render_scan(found, fmt="plain", normalize="monic"):
    lines = []
    idx = 0
    for n in sorted(found):
        sols = found[n]
        if fmt == "structured":
            lines.append(f"degree.{n}.count = {len(sols)}")
            lines += _solution_lines(sols, fmt, normalize, start=idx)
        elif sols:
            lines.append(f"degree {n}:")
            lines += ["  " + s for s in _solution_lines(sols, fmt, normalize)]
        idx += len(sols)
    if not lines:
        lines = ["no polynomial solutions in the scanned range"]
    return _doc(fmt, lines)


def render_candidates(cands, unknowns, fmt="plain", normalize="monic"):
    lines = []
    sol_idx = 0
    if fmt == "structured":
        lines.append(f"count = {sum(1 for c in cands if c.verified)}")
    for i, c in enumerate(cands):
        if fmt == "structured":
            for u in unknowns:
                if u in c.bindings:
                    lines.append(f"candidate.{i}.{u} = {encode_value(c.bindings[u])}")
            lines.append(f"candidate.{i}.kind = {'exact' if c.exact else 'numeric'}")
            lines.append(f"candidate.{i}.verified = {encode_value(c.verified)}")
            if c.residual is not None:
                lines.append(f"candidate.{i}.residual = {encode_value(c.residual)}")
            lines += _solution_lines(c.solutions, fmt, normalize, start=sol_idx, candidate=i)
        elif fmt == "latex":
            binds = ", ".join(f"{_latex_symbol(u)} = " + (
                _latex_rational(c.bindings[u]) if not isinstance(c.bindings[u], BigFloat)
                else c.bindings[u].ctx.nstr(c.bindings[u].value, 30))
                for u in unknowns if u in c.bindings)
            lines.append(f"% candidate {i}: {c.provenance}")
            lines.append(binds)
            lines += _solution_lines(c.solutions, fmt, normalize, start=sol_idx)
        else:
            binds = ", ".join(f"{u} = " + (
                str(c.bindings[u]) if not isinstance(c.bindings[u], BigFloat)
                else c.bindings[u].ctx.nstr(c.bindings[u].value, 30) + "...")
                for u in unknowns if u in c.bindings)
            status = "verified" if c.verified else f"rejected ({c.reason})"
            lines.append(f"candidate {i}: {binds}  [{'exact' if c.exact else 'numeric'}, {status}]")
            if c.residual is not None and not c.exact:
                lines.append(f"  residual = {c.residual.context.nstr(c.residual, 6)}")
            lines += ["  " + s for s in _solution_lines(c.solutions, fmt, normalize)]
        sol_idx += len(c.solutions)
    if not cands and fmt != "structured":
        lines.append("no parameter values found")
    return _doc(fmt, lines)


def render_verify(rep, fmt="plain"):
    if rep.exact:
        value = render_plain(rep.residual)
    else:
        value = encode_value(BigFloat(rep.relative, rep.relative.context.dps))
    if fmt == "structured":
        return _doc(fmt, [f"is_zero = {encode_value(rep.is_zero)}",
                          f"residual = {value}"])
    if fmt == "latex":
        return _doc(fmt, [f"L y = {poly_latex(rep.residual) if rep.exact else value}"])
    verdict = "solution verified: L y = 0" if rep.is_zero else "not a solution"
    return _doc(fmt, [verdict, f"residual: {value}"])
