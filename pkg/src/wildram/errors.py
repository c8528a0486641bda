"""Exception hierarchy shared by all wildram modules."""


class WildramError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatch(WildramError):
    """Operands live over different coefficient fields."""


class InsufficientPrecision(WildramError):
    """A value was requested at or beyond the tracked precision bound."""


class RootNotInField(WildramError):
    """A required n-th root of a field element does not exist in GF(p^e).

    Callers can recover by enlarging the extension degree e.
    """

    def __init__(self, element, n):
        self.element = element
        self.n = n
        super().__init__(f"no {n}-th root of {element!r} in GF({element.ctx.p}^{element.ctx.e})")


class DomainError(WildramError):
    """Input violates an operation's precondition."""


class NotReduced(DomainError):
    """Operation requires a reduced (wild, pole order coprime to p) input."""


class EqualInputs(DomainError):
    """The two inputs define the same extension; not a compositum."""


class CoverError(DomainError):
    """Invalid one-point cover description."""


class OracleCheckError(WildramError):
    """An internal consistency assertion of the series oracle failed.

    Surfaced deliberately: it would mean the constructed Galois action
    contradicts the formulas it is meant to verify.
    """


class ParseError(WildramError):
    """Syntax or semantic error in an input file, with position info."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)
