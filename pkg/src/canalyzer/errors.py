"""Exception hierarchy shared across the package."""


class CanalyzerError(Exception):
    """Base class for all errors raised by this package."""


class ArityCapError(CanalyzerError):
    """An operation was asked to enumerate beyond its documented arity cap."""


class ConstantFunctionError(CanalyzerError):
    """Raised when an operation is undefined for constant functions."""


class ParseError(CanalyzerError):
    """Syntax error in a Boolean expression, with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
