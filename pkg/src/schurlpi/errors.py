"""Exception hierarchy shared by all modules."""


class SchurLPIError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SchurLPIError):
    pass


class NonSingular(SchurLPIError):
    """A kernel was requested from a matrix with nonzero determinant."""


class RankDeficient(SchurLPIError):
    """Every adjugate row vanished, so the rank is too small for a unique kernel."""


class OrderMismatch(SchurLPIError):
    pass


class NonUnitFactor(SchurLPIError):
    pass


class NonUnit(SchurLPIError):
    """A series or leading recurrence coefficient is not invertible."""


class UnknownBlock(SchurLPIError):
    pass


class InvalidIdealSpec(SchurLPIError):
    pass


class DivergentSpec(SchurLPIError):
    pass


class NonIntegralExponent(SchurLPIError):
    pass


class NonTermination(SchurLPIError):
    pass


class BoundaryError(SchurLPIError):
    """Boundary terms of a recurrence-to-equation summation did not cancel."""


class InsufficientInitialValues(SchurLPIError):
    pass
