"""Exception types shared across the package."""


class SpecsumError(Exception):
    """Base class for all package-specific failures."""


class InstanceFormatError(SpecsumError, ValueError):
    """Problem-instance input (JSON or constructor arguments) is malformed."""


class InstanceTooLargeError(SpecsumError):
    """An operation's size guard (n cap) was exceeded."""


class ValueOverflowError(SpecsumError):
    """Values or totals exceed the supported exact-arithmetic range."""


class ForceNoImpossibleError(SpecsumError):
    """Every value in range is an achievable sum, so no NO-target exists."""


class SamplingRateError(SpecsumError):
    """Sample rate does not exceed the signal bandwidth. Carries the required rate."""

    def __init__(self, message: str, required_rate_hz: float):
        super().__init__(message)
        self.required_rate_hz = required_rate_hz


class DegenerateFitError(SpecsumError, ValueError):
    """Log-linear fit input has too few points or no x-spread."""


class SweepSpecError(SpecsumError, ValueError):
    """Sweep specification (JSON or constructor arguments) is invalid."""
