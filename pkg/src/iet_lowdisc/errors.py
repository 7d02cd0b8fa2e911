"""Exception types shared across the package."""


class IETLowDiscError(Exception):
    """Base class for all errors raised by this package."""


class RadicandMismatch(IETLowDiscError, ValueError):
    pass


class InvalidParams(IETLowDiscError, ValueError):
    pass


class NonPositiveLength(IETLowDiscError, ValueError):
    pass


class NonPositiveResult(IETLowDiscError, ValueError):
    def __init__(self, message, which=None):
        super().__init__(message)
        self.which = which


class OutOfDomain(IETLowDiscError, ValueError):
    pass


class RationalInput(IETLowDiscError, ValueError):
    pass


class NoReturnWithinBudget(IETLowDiscError, RuntimeError):
    pass


class NotFoundWithinWindow(IETLowDiscError, RuntimeError):
    pass


class BudgetExhausted(IETLowDiscError, RuntimeError):
    pass


class HypothesisViolated(IETLowDiscError, ValueError):
    pass


class MismatchAt(IETLowDiscError, AssertionError):
    def __init__(self, index, message=""):
        super().__init__(f"mismatch at k={index}: {message}" if message else f"mismatch at k={index}")
        self.index = index


class EmptyInput(IETLowDiscError, ValueError):
    pass


class InsufficientData(IETLowDiscError, ValueError):
    pass


class Unsupported(IETLowDiscError, NotImplementedError):
    pass
