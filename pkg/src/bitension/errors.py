"""Exception types shared by all modules.

Every error that reflects bad *input* derives from :class:`InputError`
(the CLI maps these to exit code 3); :class:`UsageError` covers malformed
invocations (exit code 2).
"""


class BitensionError(Exception):
    """Base class for all library errors."""


class UsageError(BitensionError):
    """Malformed invocation: unknown flag, missing argument, bad literal."""


class InputError(BitensionError):
    """Base for errors caused by out-of-domain or ill-formed input data."""


class StructuralError(InputError):
    """Shape mismatch: wrong vector length, frame-length mismatch."""


class DomainError(InputError):
    """Input violates a mathematical precondition (e.g. a point off the sphere).

    ``defect`` optionally records how far the input is from the admissible set.
    """

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class DataError(InputError):
    """Non-finite values where finite numbers are required."""


class UnsupportedOrderError(InputError):
    """Osculating order outside the range the closed forms cover."""


class NoSolutionError(InputError):
    """A solve has no admissible solution; carries the failing discriminant."""

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class ConstraintViolationError(InputError):
    """A computed quantity falls outside its admissible range."""


class ClassificationError(InputError):
    """A frame member is neither clearly vertical nor clearly horizontal."""
