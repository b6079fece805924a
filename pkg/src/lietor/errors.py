"""Exception types shared across the package."""


class LietorError(Exception):
    """Base class for all package errors."""


class UnsupportedTypeError(LietorError):
    """Root-system or twist data outside the supported (reduced) families."""


class IsotropicRootError(LietorError):
    """An operation requiring a non-isotropic root received an isotropic one."""


class BuildError(LietorError):
    """A construction's preconditions failed."""


class MismatchedAlgebrasError(LietorError):
    """Two elements from different algebras were combined."""


class FieldExtensionError(LietorError):
    """A normalization needs a square root outside the rationals.

    ``discriminant`` names the quadratic extension Q(sqrt(d)) that would be
    required.
    """

    def __init__(self, discriminant: int):
        self.discriminant = discriminant
        super().__init__(
            f"normalization constant lies outside Q; needs Q(sqrt({discriminant}))"
        )


class NotInSpanError(LietorError):
    """Coordinate extraction target is outside the span of the basis."""


class NonIntegralError(LietorError):
    """Coordinates were required to be integers but are not."""
