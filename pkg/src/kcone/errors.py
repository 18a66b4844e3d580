"""Exception types raised across the package."""


class KConeError(Exception):
    """Base class for every error raised by kcone."""


class InvalidInputError(KConeError, ValueError):
    """The job or variety description cannot be used."""


class PolynomialSyntaxError(InvalidInputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    pass


class NonHomogeneousError(InvalidInputError):
    pass


class SingularCurveError(InvalidInputError):
    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class NotACurveError(InvalidInputError):
    pass


class StabilizationError(KConeError):
    """A truncated computation did not settle inside its cap."""


class NegativeCellError(KConeError):
    """An assembled dimension evaluated negative; some hypothesis failed."""


class ConsistencyError(KConeError):
    """Two independent routes to the same number disagreed."""
