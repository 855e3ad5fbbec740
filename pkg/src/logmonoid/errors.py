"""Exception types shared across the package."""


class LogMonoidError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(LogMonoidError):
    """Matrix or vector dimensions do not line up."""


class IllDefinedMapError(LogMonoidError):
    """A homomorphism does not respect the stated relations."""


class MembershipError(LogMonoidError):
    """An element is required to lie in a monoid or lattice but does not."""


class UngradedMonoidError(LogMonoidError):
    """No positive grading exists; membership and saturation are undecidable here."""


class NonPointedConeError(LogMonoidError):
    """The rational cone contains a line, so no Hilbert basis exists."""


class NotSaturatedError(LogMonoidError):
    """An operation requires a saturated monoid."""


class TorsionError(LogMonoidError):
    """An operation requires a torsion-free group hull."""


class NotKummerError(LogMonoidError):
    """An operation requires a homomorphism of Kummer type."""


class InconsistentActionError(LogMonoidError):
    """A group action is not well defined on the given module."""


class MismatchedBaseError(LogMonoidError):
    """Two objects that must share a base monoid or group do not."""


class InputError(LogMonoidError):
    """Malformed input file or command-line argument."""
