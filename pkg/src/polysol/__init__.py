"""Polynomial solutions of linear ODEs with polynomial coefficients."""

from .algebra import NEG_INF, BigFloat, ParamScalar, XPoly, bind, derivative, ff, to_bigfloat
from .errors import (
    EliminationOrderError,
    FreeSymbolError,
    NoSolutionError,
    ParseError,
    PolysolError,
    ProblemError,
    UnboundParameterError,
    UndeclaredSymbolError,
    UnderdeterminedError,
    ZeroPolynomialError,
)
from .linalg import det_univariate, nullspace, rank_exact, rank_numeric
from .operator import DiffOperator, LiftedOperator, apply, build_A, build_M, eigenvalue_lambda, lift, shift_order
from .parsing import ProblemSpec, format_problem, parse_expression, parse_problem
from .roots import RootSet, real_roots
from .solver import (
    ExistenceReport,
    NumericPoly,
    ParamCandidate,
    exists_solution,
    scan_degrees,
    solutions,
    solve_parameters,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "BigFloat",
    "ParamScalar",
    "XPoly",
    "bind",
    "derivative",
    "ff",
    "to_bigfloat",
    "EliminationOrderError",
    "FreeSymbolError",
    "NoSolutionError",
    "ParseError",
    "PolysolError",
    "ProblemError",
    "UnboundParameterError",
    "UndeclaredSymbolError",
    "UnderdeterminedError",
    "ZeroPolynomialError",
    "det_univariate",
    "nullspace",
    "rank_exact",
    "rank_numeric",
    "DiffOperator",
    "LiftedOperator",
    "apply",
    "build_A",
    "build_M",
    "eigenvalue_lambda",
    "lift",
    "shift_order",
    "ProblemSpec",
    "format_problem",
    "parse_expression",
    "parse_problem",
    "RootSet",
    "real_roots",
    "ExistenceReport",
    "NumericPoly",
    "ParamCandidate",
    "exists_solution",
    "scan_degrees",
    "solutions",
    "solve_parameters",
    "verify",
]
