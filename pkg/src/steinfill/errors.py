"""Exception hierarchy shared by every module of the package."""


class SteinfillError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(SteinfillError, ValueError):
    """Parameters fall outside the range where an operation is defined."""


class DimensionError(SteinfillError, ValueError):
    """Homology vectors or matrices of incompatible size were combined."""


class CurveNameError(SteinfillError, KeyError):
    """A twist word refers to a curve the model does not know."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class IntegralityError(SteinfillError, ArithmeticError):
    """A quantity that must be an integer came out fractional."""


class NotAllowableError(DomainError):
    """A fibration has a separating vanishing cycle where none is permitted."""


class TopologyError(SteinfillError, ValueError):
    """Combinatorial data is inconsistent with the claimed topology."""


class ParseError(SteinfillError, ValueError):
    """Syntax error in the twist-word language."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
