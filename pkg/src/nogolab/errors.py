"""Exception types raised across the package."""


class NogoError(Exception):
    """Base class for all package errors."""


class NotHermitian(NogoError):
    pass


class NoConvergence(NogoError):
    pass


class BadSubsystemIndex(NogoError):
    pass


class DimensionMismatch(NogoError):
    pass


class NotAProjector(NogoError):
    pass


class InvalidState(NogoError):
    pass


class InvalidChannel(NogoError):
    pass


class DomainError(NogoError):
    pass


class BadPartition(NogoError):
    pass


class InvalidScenario(NogoError):
    pass


class MatrixFormatError(NogoError):
    """Raised when a JSON matrix document is malformed."""
