import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polysol import parse_problem  # noqa: E402

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

# acceptance results, filled in by test_acceptance.py
ACCEPTANCE = {}


def load_problem(name):
    return parse_problem((PROBLEMS / name).read_text())


def operator_from(text, symbols):
    """Operator from ``p0 ; p1 ; ...`` expression text."""
    from polysol import DiffOperator, parse_expression
    return DiffOperator([parse_expression(t, symbols) for t in text.split(";")])


DAVIDSON = ("-(2*mu + 3 - epsilon)*x ; -(2*x^2 - 2*mu - 2) ; x", ("mu", "epsilon"))
EX1 = ("beta*x + g ; alpha*(x^2 - 1) ; x^3", ("alpha", "beta", "g"))
EX2 = ("delta*x + alpha ; p - 2*x^2 ; 1", ("alpha", "delta", "p"))
EX4 = ("(-2*alpha*(K + 1) + 2*Z)*x - 2*alpha*beta*(K + 1)"
       " ; -2*alpha*x^2 + 2*(K + 1 - alpha*beta)*x + 2*beta*(K + 1)"
       " ; x*(x + beta)", ("alpha", "beta", "K", "Z"))


@pytest.fixture(scope="session")
def davidson():
    return operator_from(*DAVIDSON)


@pytest.fixture(scope="session")
def ex1():
    return operator_from(*EX1)


@pytest.fixture(scope="session")
def ex2():
    return operator_from(*EX2)


@pytest.fixture(scope="session")
def ex4():
    return operator_from(*EX4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
