"""Exception hierarchy. CLI exit codes key off the two top-level branches."""


class FloatlabError(Exception):
    """Base class for all library errors."""


class InputError(FloatlabError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class DomainError(InputError):
    """Parameter outside the domain where the operation is defined."""


class UnsupportedError(InputError):
    """Operation is not defined for this kind of body."""


class AmbiguityError(InputError):
    """Query point is not in the relative interior of a single face."""


class ConvexityError(InputError):
    def __init__(self, message, index=None, triple=None):
        super().__init__(message)
        self.index = index
        self.triple = triple


class NumericError(FloatlabError, ArithmeticError):
    """Numerical failure (CLI exit code 3)."""


class ConvergenceError(NumericError):
    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class DegenerateResultError(NumericError):
    """Computed body collapsed (e.g. empty halfspace intersection)."""


class NotPositiveDefiniteError(NumericError):
    """Q matrix failed the positive-definiteness hypothesis."""
