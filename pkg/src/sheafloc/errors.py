"""Exception hierarchy.

Input problems (bad shapes, walls, malformed data) derive from
:class:`InputError`; mathematical inconsistencies in user-supplied data derive
from :class:`InconsistencyError`.  The CLI maps the first to exit code 2 and
the second to exit code 1.
"""


class SheaflocError(Exception):
    pass


class InputError(SheaflocError, ValueError):
    pass


class InconsistencyError(SheaflocError):
    pass


class DimensionError(InputError):
    pass


class InvalidInputError(InputError):
    pass


class SingularEvaluationError(InputError):
    """A denominator weight vanishes at the evaluation point."""

    def __init__(self, weight, message=None):
        self.weight = weight
        super().__init__(message or f"weight {weight} vanishes at X")


class OnWallError(InputError):
    """The sign of some weight on the real slice is zero."""

    def __init__(self, weights, message=None):
        self.weights = tuple(weights)
        names = ", ".join(str(w) for w in self.weights)
        super().__init__(message or f"X lies on the wall of weight(s) {names}")


class DegenerateActionError(InputError):
    pass


class IncompatibleStratificationError(InputError):
    pass


class UnsupportedSheafError(InputError):
    pass


class InconsistentSheafError(InconsistencyError):
    """A cell-intersection or costalk table violates an additivity identity."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DomainWarning(UserWarning):
    """X is off the real slice a formula is stated for; the value is an analytic continuation."""
