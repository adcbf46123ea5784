"""Exception hierarchy.

Validation failures on user input derive from :class:`InputError`; failures
of an identity the theory guarantees derive from :class:`FalsificationError`
and carry the offending data.
"""


class GenClusterError(Exception):
    """Base class for every error raised by this package."""


class InputError(GenClusterError, ValueError):
    """Malformed seed data, mutation data or command-line input."""


class DimensionError(InputError):
    """Operands live on different lattices or have inconsistent shapes."""


class IncompatibilityError(InputError):
    """``Btilde^T Lambda`` is not of the form ``[D 0]`` with positive diagonal ``D``."""


class NotSkewSymmetrizableError(InputError):
    """No positive diagonal matrix symmetrizes the given exchange matrix."""


class IntegralityError(GenClusterError, ArithmeticError):
    """A quantity that must be an integer (twist exponent, bracket exponent) is not."""


class InversionError(GenClusterError, ArithmeticError):
    """A truncated series has a non-invertible constant term."""


class SignCoherenceError(GenClusterError):
    """A c-vector is zero or has entries of both signs."""


class FalsificationError(GenClusterError):
    """An identity that should hold exactly failed.

    ``payload`` holds whatever is needed to reproduce the mismatch, typically
    the differing terms.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload if payload is not None else {}


class LaurentFailure(FalsificationError):
    """An exchange relation did not divide out to a Laurent polynomial."""


class InconclusiveError(GenClusterError):
    """A truncated computation did not stabilize within the configured bound."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload if payload is not None else {}
