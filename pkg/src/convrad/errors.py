"""Exception types shared across the engine."""


class ConvradError(Exception):
    """Base class for all engine errors."""


class ParseError(ConvradError):
    """Polynomial source text could not be parsed.

    Carries 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotARootError(ConvradError):
    """t0 is not a root of P(0, T)."""


class RamifiedBranchError(ConvradError):
    """dP/dT vanishes at (0, t0); the branch is ramified at the origin,
    which is outside the supported input class."""


class TrackingFailedError(ConvradError):
    """Numeric path tracking could not be completed.

    ``reason`` is one of "step-underflow", "newton-divergence", "diverged".
    """

    def __init__(self, message, reason="newton-divergence"):
        super().__init__(message)
        self.reason = reason


class ObstructionUndecidedError(ConvradError):
    """The obstruction test at a candidate was inconclusive within the
    precision budget.  Never silently resolved; surfaced to the caller."""


class PrecisionExhaustedError(ConvradError):
    """Certified complex root isolation failed at the maximum refinement."""


class CrossValidationError(ConvradError):
    """The Hadamard coefficient estimate disagrees with the exact radius
    beyond the enforced gate."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InsufficientDataError(ConvradError):
    """Not enough finite directional profiles for the requested check."""


class InternalInconsistencyError(ConvradError):
    """A certified invariant failed; signals a bug, not a user error."""
