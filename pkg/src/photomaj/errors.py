"""Exception hierarchy shared by every photomaj module."""


class PhotomajError(Exception):
    """Base class for all library errors."""


class DomainError(PhotomajError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ConvergenceError(PhotomajError, RuntimeError):
    """A truncation could not reach the requested tolerance within its cap."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class InfeasibleTargetError(DomainError):
    """No squeezed state reproduces the requested (mean, variance) pair."""

    def __init__(self, message, variance_range=None):
        super().__init__(message)
        self.variance_range = variance_range


class UnsatisfiableAlphaError(DomainError):
    """Requested confidence level exceeds the probability mass available."""

    def __init__(self, message, deficit=0.0):
        super().__init__(message)
        self.deficit = deficit


class SpecParseError(PhotomajError, ValueError):
    """A state specification string could not be parsed.

    ``code`` is one of ``unknown-family``, ``arity``, ``mix-weight``,
    ``number`` or ``syntax``; ``offset`` is the byte offset of the problem.
    """

    def __init__(self, message, code, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.code = code
        self.offset = offset
