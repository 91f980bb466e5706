"""Exception hierarchy shared by all modules."""


class CauchyWellError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CauchyWellError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class ConvergenceError(CauchyWellError, RuntimeError):
    """An iterative or limiting procedure missed its tolerance.

    ``estimate`` carries the best value obtained and ``error`` its error
    estimate, so callers can decide whether it is still usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class QuadratureError(ConvergenceError):
    """Adaptive quadrature ran out of subdivisions."""


class EigenSolverError(ConvergenceError):
    """QL iteration did not converge for the eigenvalue at ``index``."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SpectrumStructureError(CauchyWellError):
    """Merged levels violate the even/odd alternation of the oscillation theorem."""
