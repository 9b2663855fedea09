"""Exception hierarchy.

Input and precondition problems derive from :class:`InputError`; a violated
mathematical invariant raises :class:`InvariantViolation`, which the CLI maps
to exit status 1.
"""


class TameSysError(Exception):
    pass


class InvariantViolation(TameSysError, AssertionError):
    """A structural identity that must always hold was observed to fail."""


class InputError(TameSysError, ValueError):
    pass


class NonPrimeCharacteristic(InputError):
    pass


class ReduciblePolynomial(InputError):
    pass


class UnsupportedOrder(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class NotFullRowRank(InputError):
    pass


class NotBalanced(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class InvalidRange(InputError):
    pass


class UnsupportedField(InputError):
    pass


class SearchSpaceTooLarge(InputError):
    pass


class DegreeTooHigh(InputError):
    pass


def check(condition: bool, message: str) -> None:
    """Raise InvariantViolation unless ``condition`` holds."""
    if not condition:
        raise InvariantViolation(message)
