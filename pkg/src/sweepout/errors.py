"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration and resource
problems exit with 2, failed verification checks with 1.
"""


class SweepoutError(Exception):
    """Base class for all package errors."""


class ConfigError(SweepoutError):
    """Malformed or inconsistent configuration input."""


class MissingPlanError(ConfigError):
    """A verification suite needs a perturbation plan that was not built."""


class ResourceLimitError(SweepoutError):
    """A computation would exceed a configured size or memory cap."""


class SearchBudgetExhausted(SweepoutError):
    """Interval selection ran out of candidates before satisfying a constraint.

    ``constraint`` names the last predicate that failed, so callers can
    report which requirement blocked progress.
    """

    def __init__(self, message: str, constraint: str | None = None):
        super().__init__(message)
        self.constraint = constraint


class EmptyPrefixError(SweepoutError):
    """An average was requested over an empty sequence prefix."""


class PreconditionError(SweepoutError):
    """A documented precondition of an operation does not hold."""


class GaugeDomainError(SweepoutError):
    """A gauge was evaluated or inverted outside its domain."""


class GaugeGrowthError(SweepoutError):
    """A sampled growth condition on a gauge failed."""


class ScheduleValueError(SweepoutError):
    """A schedule produced an unusable value (for example a block of size 0)."""
