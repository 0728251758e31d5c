"""Exception hierarchy shared by all modules."""


class VietaError(Exception):
    """Base class for every error raised by this package."""


class InputError(VietaError, ValueError):
    """The caller supplied arguments outside an operation's domain."""


class InvariantViolation(VietaError, RuntimeError):
    """An internal invariant failed; indicates a bug, never bad input."""


class PointNotOnConic(InputError):
    pass


class UnsupportedRange(InputError):
    pass


class NotDivisible(InputError):
    pass


class DegenerateDenominator(InputError):
    pass


class DegenerateConstruction(InputError):
    pass


class RadicandMismatch(InputError):
    pass


class InvalidFamily(InputError):
    pass


class ZeroElement(InputError):
    pass


class NotAUnit(InputError):
    pass


class ParameterOutOfTheoremRange(InputError):
    pass


class OddCoordinate(InputError):
    pass


class DegenerateK(InputError):
    pass


class NonSquareRequired(InputError):
    pass


class FactorizationTooLarge(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class NonterminatingGuard(InvariantViolation):
    pass
