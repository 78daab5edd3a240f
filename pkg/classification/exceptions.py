"""Error hierarchy shared by the numeric modules, suites and commands."""


class VerificationError(Exception):
    """Base class for every toolkit error."""


class DomainError(VerificationError, ValueError):
    """An operation was called outside its documented domain."""


class UnsupportedInputError(DomainError):
    """The input is well formed but the operation does not handle it."""


class DivergentKernelError(DomainError):
    """A kernel or tail integral does not converge for the given exponents."""


class QuadratureFailure(VerificationError):
    """Adaptive quadrature ran out of subdivisions before meeting tolerance."""

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class InternalConsistencyError(VerificationError):
    """A symbolic result had a shape that would falsify the engine itself."""
