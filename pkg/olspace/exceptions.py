"""Exceptions and warnings raised by olspace."""


class OlspaceError(Exception):
    """Base class for every error raised by olspace."""


class DomainError(OlspaceError, ValueError):
    """Raised when an argument lies outside the domain of an operation.

    Such as a negative argument of an Orlicz function or a time beyond the length of the interval.
    """


class PreconditionError(OlspaceError, ValueError):
    """Raised when the hypotheses an operation relies on are not met."""


class UnsupportedSpaceError(OlspaceError):
    """Raised when no rule is available for the requested kind of space."""


class ConfigError(OlspaceError):
    """Raised when a configuration file cannot be parsed or validated."""


class NumericalFailure(OlspaceError, ArithmeticError):
    """Raised when an iterative method does not converge within its budget.

    The best value reached so far is kept in `best_value`.
    """

    def __init__(self, message: str, best_value: float) -> None:
        super().__init__(message)
        self.best_value = best_value


class ProbedRangeWarning(UserWarning):
    """Warning about a verdict that only holds on the probed finite range."""


class ConvergenceWarning(UserWarning):
    """Warning about an optimizer that returned its best value without converging."""
