"""Exception hierarchy shared by every polysol module."""


class PolysolError(Exception):
    """Base class for all errors raised by polysol."""


class FreeSymbolError(PolysolError):
    """A value that must be fully bound still contains parameter symbols."""

    def __init__(self, symbols, message=None):
        self.symbols = tuple(symbols)
        super().__init__(message or "unbound parameter(s): " + ", ".join(self.symbols))


class UnboundParameterError(FreeSymbolError):
    """An operator passed to a fully-bound query still has free parameters."""


class EliminationOrderError(PolysolError):
    """The eigenvalue condition involves more than the first unknown."""


class UnderdeterminedError(PolysolError):
    """A parameter condition vanishes identically, so it fixes nothing."""


class NoSolutionError(PolysolError):
    """Solutions were requested at a degree where none exist."""


class ZeroPolynomialError(PolysolError):
    """Root finding was asked for on the zero polynomial."""


class ParseError(PolysolError):
    """Malformed expression or problem file.

    ``position`` is a 0-based character offset into the expression (or
    ``None``), ``line`` a 1-based line number in a problem file (or ``None``).
    """

    def __init__(self, message, position=None, line=None):
        self.message = message
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"column {position + 1}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class UndeclaredSymbolError(ParseError):
    """An identifier in an expression was not declared."""


class ProblemError(PolysolError):
    """A syntactically valid problem file that violates a semantic rule."""
