import io
from fractions import Fraction as F

import pytest

from conftest import PROBLEMS, load_problem
from polysol import (
    ParamScalar,
    ParseError,
    ProblemError,
    UndeclaredSymbolError,
    XPoly,
    format_problem,
    parse_expression,
    parse_problem,
)
from polysol.cli import main
from polysol.output import decode_value, parse_structured, structured_solutions


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# --- expressions ----------------------------------------------------------

def test_parse_expression_examples():
    assert parse_expression("x^3") == XPoly.monomial(3)
    syms = ("alpha",)
    a = ParamScalar.symbol("alpha", syms)
    assert parse_expression("alpha*(x^2 - 1)", syms) == XPoly([-a, 0, a])
    syms = ("mu",)
    mu = ParamScalar.symbol("mu", syms)
    assert parse_expression("-(2*x^2 - 2*mu - 2)", syms) == XPoly([2 * mu + 2, 0, -2])


def test_parse_expression_precedence():
    assert parse_expression("2*x^2") == XPoly([0, 0, 2])
    assert parse_expression("-x^2") == XPoly([0, 0, -1])
    assert parse_expression("(x + 1)^2 - 2*x") == XPoly([1, 0, 1])
    assert parse_expression("3/4*x - 1/2") == XPoly([F(-1, 2), F(3, 4)])
    assert parse_expression("x - -x") == XPoly([0, 2])


@pytest.mark.parametrize("text, column", [
    ("2x", 2),
    ("x^", 3),
    ("(x + 1", 7),
    ("x $ 2", 3),
    ("x^1/2", 3),
    ("", 1),
])
def test_parse_expression_syntax_errors(text, column):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.position == column - 1


def test_parse_expression_undeclared_and_exponent():
    with pytest.raises(UndeclaredSymbolError):
        parse_expression("beta*x", ("alpha",))
    with pytest.raises(ParseError, match="exponent"):
        parse_expression("x^alpha", ("alpha",))


# --- problem files ----------------------------------------------------------

def test_problem_example_one():
    spec = load_problem("ex1.ode")
    assert spec.order == 2
    assert spec.bindings == {"alpha": F(-15, 2)}
    assert spec.unknowns == ["beta", "g"]
    assert spec.degree == 6


def test_problem_trivial_order_zero(tmp_path):
    spec = parse_problem("order: 0\np[0]: 1\ndegree: 3\n")
    f = tmp_path / "t.ode"
    f.write_text("order: 0\np[0]: 1\ndegree: 3\n")
    code, out, _ = run("solve", str(f))
    assert spec.order == 0 and code == 1 and "no polynomial solution" in out


def test_problem_shifted_coulomb_binding():
    spec = load_problem("shifted_coulomb.ode")
    assert spec.bindings == {"K": F(-3, 2), "Z": 1}


@pytest.mark.parametrize("text, err", [
    ("order: 1\np[1]: 1\np[1]: x\n", ProblemError),
    ("order: 1\np[2]: 1\np[1]: 1\n", ProblemError),
    ("order: 2\np[0]: 1\n", ProblemError),
    ("order: 1\np[1]: 0\n", ProblemError),
    ("p[0]: 1\n", ProblemError),
    ("order: 1\np[1]: a\nlet a = 1\nunknown a\n", ProblemError),
    ("order: 1\np[1]: a\n", UndeclaredSymbolError),
    ("order: 1\np[1]: 1\nfoo\n", ParseError),
    ("order: 1\np[1]: 1\nlet a = 1.5\n", ParseError),
    ("order: 1\np[1]: 1\ndegree: 2\ndegrees: 1..3\n", ProblemError),
])
def test_problem_errors(text, err):
    with pytest.raises(err):
        parse_problem(text)


def test_problem_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse_problem("order: 1\n\np[1]: x +\n")
    assert info.value.line == 3


def test_problem_round_trip():
    corpus = [p.read_text() for p in sorted(PROBLEMS.glob("*.ode"))]
    corpus.append("order: 3\np[3]: x^2 - 1/3\np[0]: c*x\nunknown c\ndegrees: 0..5\n"
                  "precision: 40\nnormalize: primitive\n")
    for text in corpus:
        spec = parse_problem(text)
        again = parse_problem(format_problem(spec))
        assert again == spec


# --- structured output ------------------------------------------------------

def test_decode_value():
    assert decode_value("true") is True
    assert decode_value("-7/2") == F(-7, 2)
    v = decode_value("1.25~30")
    assert v.precision == 30 and float(v) == 1.25


def test_structured_round_trip_exists():
    code, out, _ = run("exists", str(PROBLEMS / "davidson.ode"), "--format", "structured")
    doc = parse_structured(out)
    assert code == 0
    assert doc["exists"] is True and doc["rank_M"] == doc["rank_M_prime"] == 2
    assert doc["lambda"] == 0


def test_structured_round_trip_params():
    code, out, _ = run("params", str(PROBLEMS / "ex1.ode"), "--format", "structured")
    doc = parse_structured(out)
    assert code == 0 and doc["count"] == 3
    assert doc["candidate.0.beta"] == 15 and doc["candidate.0.g"] == 0
    assert doc["candidate.2.kind"] == "numeric"
    assert abs(float(doc["candidate.2.g"]) - 15.69953) < 1e-5
    sols = structured_solutions(doc)
    assert sols[0] == [225, 0, -225, 0, 15, 0, 1]
    assert len(sols[2]) == 7 and doc["candidate.2.residual"].precision == 100


def test_latex_output():
    code, out, _ = run("solve", str(PROBLEMS / "davidson.ode"), "--let", "mu=-2",
                       "--let", "epsilon=13", "--degree", "7", "--format", "latex")
    assert code == 0
    assert out.strip() == "y_{0}(x) = x^{7} - 7 x^{5} + \\frac{35}{4} x^{3}"


# --- CLI contract -----------------------------------------------------------

def test_cli_exists_plain():
    code, out, _ = run("exists", str(PROBLEMS / "davidson.ode"), "--degree", "2")
    assert code == 0
    assert out.startswith("exists: yes, rank(M_n)=rank(M'_n)=2")


def test_cli_solve_table_row():
    code, out, _ = run("solve", str(PROBLEMS / "davidson.ode"), "--degree", "7",
                       "--let", "mu=-2", "--let", "epsilon=13")
    assert code == 0 and out.strip() == "y = x^7 - 7*x^5 + 35/4*x^3"


def test_cli_primitive_normalization():
    code, out, _ = run("solve", str(PROBLEMS / "davidson.ode"), "--normalize", "primitive")
    assert code == 0 and out.strip() == "y = 2*x^2 - 5"


def test_cli_params_ex1():
    code, out, _ = run("params", str(PROBLEMS / "ex1.ode"), "--degree", "6",
                       "--unknowns", "beta,g")
    assert code == 0
    assert "beta = 15, g = 15.69952709088158333" in out


def test_cli_scan_and_verify():
    code, out, _ = run("scan", str(PROBLEMS / "davidson.ode"), "--degrees", "0..3")
    assert code == 0 and out.splitlines() == ["degree 2:", "  y = x^2 - 5/2"]
    code, out, _ = run("verify", str(PROBLEMS / "davidson.ode"), "--solution", "2*x^2 - 5")
    assert code == 0 and "verified" in out
    code, out, _ = run("verify", str(PROBLEMS / "davidson.ode"), "--solution", "x^2 - 2")
    assert code == 1 and "residual: 2*x" in out


@pytest.mark.parametrize("argv", [
    ("exists", "ex1.ode"),                       # unbound parameters
    ("solve", "missing.ode"),                    # unreadable file
    ("solve", "davidson.ode", "--let", "nu=1"),  # unknown symbol
    ("scan", "davidson.ode", "--degrees", "3..1"),  # empty range
    ("frobnicate", "davidson.ode"),              # unknown command
    ("verify", "davidson.ode", "--solution", "2x"),
])
def test_cli_input_errors(argv):
    cmd, name, *rest = argv
    code, _, err = run(cmd, str(PROBLEMS / name), *rest)
    assert code == 2


def test_cli_malformed_file(tmp_path):
    f = tmp_path / "bad.ode"
    f.write_text("order: 2\np[2]: x^\n")
    code, _, err = run("exists", str(f), "--degree", "1")
    assert code == 2 and "line 2" in err


def test_cli_proven_nonexistence():
    code, out, _ = run("exists", str(PROBLEMS / "davidson.ode"), "--degree", "3")
    assert code == 1 and out.startswith("exists: no")
