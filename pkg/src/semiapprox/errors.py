"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input violates a documented precondition (non-finite, wrong shape, ...)."""


class DimensionMismatchError(InvalidInputError):
    """Two operators that must share a dimension do not."""


class NotAContractionError(InvalidInputError):
    """Operator expected to have spectral norm <= 1 (+ tolerance) does not."""


class OverflowRiskError(InvalidInputError):
    """Matrix exponential requested for a norm too large to evaluate safely."""


class DomainError(ValueError):
    """Scalar argument outside the mathematical domain of a formula."""


class DegenerateInputError(DomainError):
    """Formula degenerates for this input (e.g. optimizing over an empty direction)."""


class SingularityError(ValueError):
    """Matrix is singular or too ill-conditioned to invert reliably."""


class ContourTooCloseError(SingularityError):
    """Integration contour passes too close to the spectrum; retry with a wider angle."""


class InsufficientDataError(ValueError):
    """Not enough usable data points for a fit."""
