class RCOrbitError(ValueError):
    """Base class for every error raised by the orbit engine."""


class VariableMismatchError(RCOrbitError):
    pass


class DivisionRemainderError(RCOrbitError):
    """Exact division failed: nonzero remainder or a divisor that is not monic."""


class DegeneratePointError(RCOrbitError):
    """Zero tuple, degenerate x-block or singular multiplier system."""


class ParametricDegeneracyError(RCOrbitError):
    """All three coefficients of the reduced quadratic vanish."""


class NotASquareError(RCOrbitError):
    pass


class InvariantViolationError(RCOrbitError):
    """A property the engine relies on failed to hold."""


class UnknownPresetError(RCOrbitError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown preset"


class FormShapeError(RCOrbitError):
    """A polynomial does not have the degree or variables an operation expects."""
