"""Exception types shared across the package."""


class CasimirError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """An input lies outside the domain where a quantity is finite."""


class ConvergenceError(CasimirError, ArithmeticError):
    """A quadrature or series did not reach the requested tolerance.

    ``best`` carries the best available estimate (a float or a result object)
    and ``err_est`` its estimated relative error.
    """

    def __init__(self, message, best=None, err_est=None):
        super().__init__(message)
        self.best = best
        self.err_est = err_est


class PassivityError(CasimirError, ValueError):
    """A round-trip reflection product exceeded unity."""


class ExtrapolationError(CasimirError, ValueError):
    """A tabulated model was queried outside its grid."""


class LoadError(CasimirError, ValueError):
    """A permittivity table could not be parsed."""

    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class AliasingError(CasimirError, ValueError):
    """A frequency exceeds the Nyquist limit of a sampled series."""


class RegimeWarning(UserWarning):
    """Inputs sit outside the asymptotic regime a closed form assumes."""
