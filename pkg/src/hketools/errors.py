"""Exception types shared across the package."""


class HkeError(Exception):
    """Base class for every error raised by hketools."""


class EmptyFamilyError(HkeError, ValueError):
    pass


class EmptySubfamilyError(HkeError, ValueError):
    pass


class OverlapError(HkeError, ValueError):
    """Two vertex sets or subfamilies that must be disjoint are not."""


class NonUniformError(HkeError, ValueError):
    pass


class CapExceededError(HkeError, ValueError):
    """An exponential search was asked to run beyond its size cap."""


class ParseError(HkeError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TheoremViolation(HkeError, AssertionError):
    """Raised when results contradict a proven equivalence.

    This never describes a legitimate outcome; it means one of the
    checkers is wrong.
    """


class DisagreementError(TheoremViolation):
    pass
