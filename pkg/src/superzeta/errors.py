"""Exception hierarchy.

Every exception carries an ``exit_code`` used by the command-line front end:
2 for domain errors (bad parameters), 3 for numerical failures.
"""


class SuperzetaError(Exception):
    exit_code = 3


class DomainError(SuperzetaError, ValueError):
    exit_code = 2


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class IndexOutOfRange(DomainError, IndexError):
    pass


class CharacterError(DomainError):
    """Non-fundamental discriminant or an invalid character table."""


class RouteUnavailable(DomainError):
    """No evaluation route covers the requested parameters."""


class NumericError(SuperzetaError, ArithmeticError):
    exit_code = 3


class RadiusError(NumericError):
    """A Cauchy circle would enclose a zero or pole."""


class CountMismatch(NumericError):
    """Zero count from sign changes disagrees with the phase count."""

    def __init__(self, expected, found, message=None):
        self.expected = expected
        self.found = found
        super().__init__(message or f"zero count mismatch: phase count {expected}, located {found}")
