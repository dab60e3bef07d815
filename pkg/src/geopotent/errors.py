"""Exception hierarchy.

Errors fall into two families the CLI maps onto distinct exit codes:
construction/validation problems (bad tables, bad schedules, bad
parameters) and numerical-domain problems (an operation evaluated
outside its mathematical domain).
"""


class GeopotentError(Exception):
    """Base class for all library errors."""


class NonPhysicalValueError(GeopotentError):
    """A constructed quantity violates a physical constraint.

    Carries the offending sample index when raised during table
    validation, so file readers can report line numbers.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NonPhysicalInputError(GeopotentError):
    """An operation received a non-physical argument (negative radius, ...)."""


class NonMonotonicRadiusError(GeopotentError):
    """Profile radii are not strictly increasing."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class TooFewSamplesError(GeopotentError):
    """Profile has fewer samples than the minimum of four."""


class PressureIncreaseError(GeopotentError):
    """Pressure rises with radius beyond the monotonicity slack."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OutOfDomainError(GeopotentError):
    """Argument lies outside the mathematical domain of the operation."""


class DegenerateProfileError(GeopotentError):
    """Profile admits no answer (e.g. constant pressure has no gradient maximum)."""


class MissingPressureSourceError(GeopotentError):
    """Neither a pressure override nor a profile was supplied."""


class ScheduleError(GeopotentError):
    """Cavity schedule failed validation; carries the offending segment index."""

    def __init__(self, message, segment=None):
        super().__init__(message)
        self.segment = segment


class ConfigError(GeopotentError):
    """Run configuration file is malformed or contains unknown keys."""
