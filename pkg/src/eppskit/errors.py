"""Exception hierarchy shared by all eppskit modules."""


class EppsError(Exception):
    """Base class for all eppskit errors."""


# --- grid / resampling ---

class InvalidGrid(EppsError):
    pass


class NoPriorTick(EppsError):
    pass


class GridMismatch(EppsError):
    pass


class WindowTooLarge(EppsError):
    pass


# --- simulation ---

class EventBeyondHorizon(EppsError):
    pass


# --- estimation ---

class InsufficientOverlap(EppsError):
    pass


class ZeroVariance(EppsError):
    pass


class ZeroDenominator(EppsError):
    pass


class NonPositiveKernel(EppsError):
    pass


class NegativeArgument(EppsError):
    pass


# --- ingestion ---

class MalformedRow(EppsError):
    def __init__(self, line_no, detail=""):
        self.line_no = line_no
        super().__init__(f"malformed row at line {line_no}: {detail}")


class NonMonotoneTimestamps(EppsError):
    pass


class EmptyAfterFiltering(EppsError):
    pass


class NoUsableDays(EppsError):
    pass


class EmptyInput(EppsError):
    pass


class IoError(EppsError):
    pass


class PredictionRangeWarning(UserWarning):
    """Predicted coefficient fell outside [-1, 1]; inputs are likely noisy."""


class ApproximationDomainWarning(UserWarning):
    """Closed-form approximation used outside its small lambda*dt0 regime."""
