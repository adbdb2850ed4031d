"""Exception hierarchy shared by every xicheck module."""


class XiCheckError(Exception):
    """Base class for all numerical-engine failures."""


class DomainError(XiCheckError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """An argument sits on (or numerically at) a pole."""


class CapacityError(XiCheckError):
    """A precomputed table was asked for more entries than it holds."""


class ContractError(XiCheckError):
    """A caller-side precondition or a convergence assumption was violated."""


class RangeError(DomainError):
    """Parameter outside the supported evaluation range (e.g. extreme alpha)."""


class BudgetError(XiCheckError):
    """Evaluation budget exhausted before the requested accuracy was reached.

    The best available estimate is kept on the exception so callers can still
    report it.
    """

    def __init__(self, message, best_estimate=None, err_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.err_estimate = err_estimate
