"""Exception types raised across the package."""


class OamMimoError(Exception):
    """Base class for all package errors."""


class DomainError(OamMimoError, ValueError):
    """An argument lies outside the supported numerical domain."""


class ShapeError(OamMimoError, ValueError):
    """A matrix has the wrong shape or structure (non-square, non-Hermitian)."""


class NotPSDError(OamMimoError, ArithmeticError):
    """A matrix expected to be positive semidefinite has a significantly negative eigenvalue."""


class AliasingError(OamMimoError, ValueError):
    """An OAM mode lies outside the canonical range for the array size."""


class ConfigError(OamMimoError, ValueError):
    """A scenario configuration failed to parse or validate.

    ``field`` names the offending key when one can be identified.
    """

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
