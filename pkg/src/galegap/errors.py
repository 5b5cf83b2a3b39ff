"""Exception types shared by the library and the command-line front end."""


class GaleGapError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GaleGapError, ValueError):
    """Malformed textual input (rationals, sequences, instance files)."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class ContractError(GaleGapError, ValueError):
    """A documented precondition of an operation was violated.

    ``contract`` names the violated condition so that callers (and the CLI)
    can report it verbatim.
    """

    def __init__(self, contract, message=""):
        self.contract = contract
        super().__init__(f"{contract}: {message}" if message else contract)


class UndefinedOperation(GaleGapError, ArithmeticError):
    """Arithmetic with no defined value, such as ``inf + -inf``."""
