"""Exception types shared across the mining pipeline."""


class MethodMinerError(Exception):
    """Base class for all pipeline errors."""


class NotARepository(MethodMinerError):
    """The given path is not a usable Git repository."""


class IoFailure(MethodMinerError):
    """A git invocation or file operation failed."""


class InvalidDateRange(MethodMinerError):
    """The requested window has since > until."""


class SpanOutOfRange(MethodMinerError):
    """A method span points outside the classified line range."""


class DomainError(MethodMinerError):
    """A numeric argument is outside the defined domain."""


class EmptyEventList(MethodMinerError):
    """A history fold was asked to summarize zero events."""


class KeyMismatch(MethodMinerError):
    """A label or event references a method unknown to the dataset."""
