"""Existence decisions, solution construction and parameter determination.

``L y = 0`` has a polynomial solution of degree exactly ``n`` iff
``rank(M_n) == rank(M_n')``.  Solutions are read off the nullspace of the
triangular matrix of the lifted operator and differentiated ``m`` times.

Bindings map symbol names to exact rationals (``int``/``Fraction``) or to
big floats (``BigFloat`` or mpf).  Exact bindings keep every step exact;
any numeric binding switches rank and nullspace computations to big-float
elimination with a relative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg, upoly
from .algebra import (
    DEFAULT_PRECISION,
    BigFloat,
    ParamScalar,
    XPoly,
    derivative,
    ff,
    float_context,
    is_exact,
)
from .errors import (
    EliminationOrderError,
    NoSolutionError,
    UnboundParameterError,
    UnderdeterminedError,
    ZeroPolynomialError,
)
from .operator import apply, apply_numeric, build_A, build_M, eigenvalue_lambda, lift
from .roots import real_roots


@dataclass
class ExistenceReport:
    degree: int
    m: int
    rank_M: int
    rank_M_prime: int
    lambda_value: object
    exists: bool
    numeric: bool = False


@dataclass(frozen=True)
class NumericPoly:
    """Polynomial in ``x`` with big-float coefficients (ascending)."""

    coeffs: tuple
    precision: int = DEFAULT_PRECISION

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return float_context(self.precision).zero

    def monic(self):
        lead = self.coeffs[-1]
        return NumericPoly(tuple(c / lead for c in self.coeffs), self.precision)

    def __str__(self):
        ctx = float_context(self.precision)
        text = ""
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            xp = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = ctx.nstr(abs(c), 20)
            body = xp if (xp and mag == "1.0") else (f"{mag}*{xp}" if xp else mag)
            if not text:
                text = ("-" if c < 0 else "") + body
            else:
                text += (" - " if c < 0 else " + ") + body
        return text or "0"


@dataclass
class ParamCandidate:
    bindings: dict
    provenance: str
    verified: bool = False
    solutions: list = field(default_factory=list)
    residual: object = None
    exact: bool = True
    reason: str = ""


@dataclass
class VerifyReport:
    exact: bool
    is_zero: bool
    residual: object
    relative: object = None


# ---------------------------------------------------------------------------
# binding helpers


def _split(bindings):
    exact, numeric = {}, {}
    for s, v in (bindings or {}).items():
        if is_exact(v):
            exact[s] = Fraction(v)
        elif isinstance(v, ParamScalar):
            exact[s] = v.constant_value()
        else:
            numeric[s] = v.value if isinstance(v, BigFloat) else v
    return exact, numeric


def _prepare(L, bindings):
    exact, numeric = _split(bindings)
    free = L.free_symbols - set(exact) - set(numeric)
    if free:
        raise UnboundParameterError(sorted(free))
    L1 = L.bind(exact)
    numeric = {s: v for s, v in numeric.items() if s in L1.free_symbols}
    return L1, numeric


# ---------------------------------------------------------------------------
# existence and construction


def exists_solution(L, n, bindings=None, precision=DEFAULT_PRECISION, tol=None):
    """Decide whether ``L y = 0`` has a solution of degree exactly ``n``."""
    L1, numeric = _prepare(L, bindings)
    H = lift(L1)
    M, Mp = build_M(L1, n, H.m)
    lam = eigenvalue_lambda(H, n + H.m)
    if not numeric:
        rM = linalg.rank_exact(M)
        rMp = linalg.rank_exact(Mp) if Mp[0] else 0
        return ExistenceReport(n, H.m, rM, rMp, lam.constant_value(), rM == rMp)
    ctx = float_context(precision)
    Mf = linalg.as_float(M, precision, numeric)
    rM = linalg.rank_numeric(Mf, tol, precision)
    rMp = linalg.rank_numeric([row[:-1] for row in Mf], tol, precision) if n else 0
    lam_v = BigFloat(lam.evaluate(numeric, ctx), precision)
    return ExistenceReport(n, H.m, rM, rMp, lam_v, rM == rMp, numeric=True)


def _top_kernel_vector(basis, index):
    for v in basis:
        if v[index]:
            return v
    return None


def _z_to_y(zcoeffs, m):
    return [zcoeffs[i] * ff(i, m) for i in range(m, len(zcoeffs))]


def solutions(L, n, bindings=None, precision=DEFAULT_PRECISION, tol=None):
    """Monic solutions of degree exactly ``n``.

    The kernel basis of ``A_{n+m}`` is in reduced form with respect to the
    trailing coordinate, so at most one vector reaches degree ``n+m``;
    vectors of lower degree (e.g. the constants killed by ``D^m``) are
    ignored.  Raises ``NoSolutionError`` when no degree-``n`` solution exists.
    """
    L1, numeric = _prepare(L, bindings)
    H = lift(L1)
    top = n + H.m
    A = build_A(H, top)
    if not numeric:
        z = _top_kernel_vector(linalg.nullspace_exact(linalg.as_rational(A)), top)
        if z is None:
            raise NoSolutionError(f"no polynomial solution of degree {n}")
        return [XPoly.from_rationals(_z_to_y(z, H.m)).monic()]
    Af = linalg.as_float(A, precision, numeric)
    if tol is None:
        tol = linalg.default_tolerance(precision)
    z = _top_kernel_vector(linalg.nullspace_numeric(Af, tol, precision), top)
    if z is None:
        raise NoSolutionError(f"no polynomial solution of degree {n}")
    y = _z_to_y(z, H.m)
    lead = y[-1]
    y = [c / lead for c in y]
    # entries at roundoff level relative to the largest coefficient are zeros
    cut = tol * max(abs(c) for c in y)
    ctx = float_context(precision)
    y = [c if abs(c) > cut else ctx.zero for c in y]
    return [NumericPoly(tuple(y), precision)]


def kernel_solutions(L, n_max, bindings=None):
    """Every ``(z, y)`` pair of the reduced kernel basis of ``A_{n_max+m}``.

    Exact only; used by :func:`scan_degrees` and by the tests that check the
    ``D^m z = y`` relationship.
    """
    L1, numeric = _prepare(L, bindings)
    if numeric:
        raise ValueError("kernel_solutions needs exact bindings")
    H = lift(L1)
    A = linalg.as_rational(build_A(H, n_max + H.m))
    out = []
    for v in linalg.nullspace_exact(A):
        z = XPoly.from_rationals(v)
        y = derivative(z, H.m)
        if not y.is_zero():
            out.append((z, y))
    return H, A, out


def scan_degrees(L, n_max, bindings=None, precision=DEFAULT_PRECISION, tol=None):
    """``{n: [solutions of degree exactly n]}`` for ``0 <= n <= n_max``."""
    _, numeric = _split(bindings)
    if numeric:
        out = {}
        for n in range(n_max + 1):
            try:
                out[n] = solutions(L, n, bindings, precision, tol)
            except NoSolutionError:
                out[n] = []
        return out
    _, _, pairs = kernel_solutions(L, n_max, bindings)
    out = {n: [] for n in range(n_max + 1)}
    for _, y in pairs:
        out[y.degree].append(y.monic())
    return out


# ---------------------------------------------------------------------------
# verification


def verify(L, y, bindings=None, precision=DEFAULT_PRECISION, tol=None):
    """Substitute ``y`` into ``L``.

    Exact mode returns the residual polynomial.  Numeric mode (big-float
    bindings or a :class:`NumericPoly`) returns the largest residual
    coefficient relative to the largest coefficient among the terms
    ``p_k * y^(k)`` before they cancel.
    """
    exact, numeric = _split(bindings)
    L1 = L.bind(exact)
    if not numeric and isinstance(y, XPoly):
        r = apply(L1, y)
        return VerifyReport(True, r.is_zero(), r)
    ctx = float_context(precision)
    if tol is None:
        tol = linalg.default_tolerance(precision)
    if isinstance(y, XPoly):
        ycoeffs = y.evaluate_coeffs(numeric, ctx)
    else:
        ycoeffs = list(y.coeffs)
    missing = L1.free_symbols - set(numeric)
    if missing:
        raise UnboundParameterError(sorted(missing))
    res, scale = apply_numeric(L1, ycoeffs, numeric, ctx)
    big = max((abs(v) for v in res), default=ctx.zero)
    rel = big / scale if scale else big
    return VerifyReport(False, rel <= tol, res, rel)


# ---------------------------------------------------------------------------
# parameter determination


def _drop_zero_lines(A):
    rows = [i for i, row in enumerate(A) if any(not v.is_zero() for v in row)]
    cols = [j for j in range(len(A[0])) if any(not A[i][j].is_zero() for i in range(len(A)))]
    return [[A[i][j] for j in cols] for i in rows]


def minor_condition(A, n, symbol):
    """Univariate polynomial whose roots make every ``(n+1)``-minor vanish.

    ``A`` is ``A_{n+m}`` with only ``symbol`` free.  Identically zero rows
    and columns are dropped first; a square remainder gives its determinant,
    a tall one the gcd of its maximal minors.  Returns ``[]`` when the
    condition is vacuous or identically satisfied.
    """
    T = _drop_zero_lines(A)
    if not T or len(T[0]) != n + 1 or len(T) < n + 1:
        return []
    size = n + 1
    if len(T) == size:
        return linalg.det_univariate(T, symbol).univariate(symbol)
    g = []
    for rows in combinations(range(len(T)), size):
        d = linalg.det_univariate([T[i] for i in rows], symbol).univariate(symbol)
        g = upoly.gcd_(g, d) if g else upoly.monic(d)
        if g and len(g) == 1:
            break
    return g


def _root_values(q, precision):
    rs = real_roots(q, precision)
    vals = [(r, True) for r, _ in rs.rational_roots]
    vals += [(iv.approx(precision), False) for iv in rs.real_roots]
    vals.sort(key=lambda t: float(t[0]) if t[1] else float(t[0].value))
    return vals


def _sort_key(c, unknowns):
    vals = []
    for u in unknowns:
        v = c.bindings.get(u)
        if v is None:
            vals.append(0.0)
        elif isinstance(v, BigFloat):
            vals.append(float(v.value))
        else:
            vals.append(float(v))
    return (0 if c.exact else 1, tuple(vals))


def solve_parameters(L, n, unknowns, bindings=None, precision=DEFAULT_PRECISION,
                     include_rejected=False):
    """Find values of one or two unknown parameters admitting a degree-``n`` solution.

    Stage 1 solves the last diagonal entry ``lambda_{n+m}`` for the first
    unknown; stage 2 solves the truncated minor condition for the second;
    stage 3 checks the rank condition for every real root combination;
    stage 4 builds and verifies the solutions.  Returns verified candidates
    (plus rejected ones when ``include_rejected``), exact before numeric,
    then by root value.
    """
    unknowns = list(unknowns)
    if len(unknowns) not in (1, 2):
        raise ValueError("solve_parameters handles one or two unknowns")
    exact, numeric = _split(bindings)
    if numeric:
        raise ValueError("known parameters must be bound to exact rationals")
    L1 = L.bind(exact)
    free = L1.free_symbols - set(unknowns)
    if free:
        raise UnboundParameterError(sorted(free))

    H = lift(L1)
    top = n + H.m
    A = build_A(H, top)
    lam = A[top][top]
    u1 = unknowns[0]
    extra = lam.free_symbols - {u1}
    if extra:
        raise EliminationOrderError(
            f"lambda_{top} = {lam} involves {', '.join(sorted(extra))} besides {u1}")
    if lam.is_zero():
        raise UnderdeterminedError(f"lambda_{top} vanishes identically in {u1}")
    if lam.is_constant():
        return []

    stage1 = _root_values(lam.univariate(u1), precision)
    pending = []
    rejected = []
    for i, (r1, ex1) in enumerate(stage1, 1):
        prov1 = f"{u1}: root {i}/{len(stage1)} of lambda_{top}"
        if len(unknowns) == 1:
            pending.append(({u1: r1}, prov1, ex1))
            continue
        u2 = unknowns[1]
        if not ex1:
            rejected.append(ParamCandidate(
                {u1: r1}, prov1, exact=False,
                reason=f"irrational {u1} with {u2} still free is not supported"))
            continue
        A1 = [[v.bind({u1: r1}) for v in row] for row in A]
        q = minor_condition(A1, n, u2)
        if not q:
            rejected.append(ParamCandidate(
                {u1: r1}, prov1,
                reason=f"minor condition vanishes identically in {u2} (underdetermined)"))
            continue
        try:
            stage2 = _root_values(q, precision)
        except ZeroPolynomialError:
            stage2 = []
        for k, (r2, ex2) in enumerate(stage2, 1):
            prov = f"{prov1}; {u2}: root {k}/{len(stage2)} of minor condition"
            pending.append(({u1: r1, u2: r2}, prov, ex1 and ex2))

    verified = []
    for b, prov, ex in pending:
        cand = ParamCandidate(dict(b), prov, exact=ex)
        full = {**exact, **b}
        rep = exists_solution(L1, n, b, precision)
        if not rep.exists:
            cand.reason = f"rank condition fails: rank(M)={rep.rank_M}, rank(M')={rep.rank_M_prime}"
            rejected.append(cand)
            continue
        sols = solutions(L1, n, b, precision)
        worst = None
        ok = True
        for y in sols:
            vr = verify(L, y, full, precision)
            if vr.exact:
                ok = ok and vr.is_zero
                worst = Fraction(0) if vr.is_zero else vr.residual
            else:
                ok = ok and vr.is_zero
                worst = vr.relative if worst is None else max(worst, vr.relative)
        cand.solutions = sols
        cand.residual = worst
        cand.verified = ok
        if ok:
            verified.append(cand)
        else:
            cand.reason = "residual above tolerance"
            rejected.append(cand)

    verified.sort(key=lambda c: _sort_key(c, unknowns))
    if include_rejected:
        rejected.sort(key=lambda c: _sort_key(c, unknowns))
        return verified + rejected
    return verified
