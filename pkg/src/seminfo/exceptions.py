"""Exception hierarchy shared by every module.

Validation problems subclass ``ValueError`` so callers that only care about
"bad input" can catch that; the CLI maps them to exit status 2.
"""


class SemInfoError(Exception):
    """Base class for all errors raised by :mod:`seminfo`."""


class StructuralError(SemInfoError, ValueError):
    """Malformed input: wrong shapes, unknown ids, duplicates."""


class DomainError(SemInfoError, ValueError):
    """Well-formed input outside the mathematical domain of an operation."""


class CapabilityError(SemInfoError, ValueError):
    """Input is valid but exceeds what this implementation supports."""


class InfeasibleError(DomainError):
    """A planning request has no admissible solution.

    Attributes
    ----------
    required : float
        The unclamped value that violated the constraint.
    """

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class NumericalError(SemInfoError, ArithmeticError):
    """Numerical breakdown during an iterative procedure."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration
