"""Exception hierarchy shared by all lderiv modules.

The CLI maps these onto exit codes: usage problems exit 2, failed checks
exit 1, and anything derived from NumericalError exits 3.
"""


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class NumericalError(RuntimeError):
    """Base class for 'could not compute to the required accuracy'."""


class PrecisionLossError(NumericalError):
    """Accuracy target unreachable; carries the error bound achieved."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error bound {achieved:.3e})")
        self.achieved = achieved


class BoundaryZeroError(NumericalError):
    """A zero sits on (or numerically indistinguishable from) a contour."""

    def __init__(self, message: str, location: complex):
        super().__init__(f"{message} near {location}")
        self.location = location


class UniquenessViolationError(NumericalError):
    """A region certified to hold one zero reported a different count."""


class NearZeroError(NumericalError):
    """Point rejected because L is below the near-zero noise floor."""


class InconclusiveBoundaryError(NumericalError):
    """Boundary-zero certification conditions unmet; count not trusted."""
