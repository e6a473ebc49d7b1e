"""Exception types shared across the package."""


class FermiModewiseError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(FermiModewiseError, ValueError):
    """Raised when an argument violates a documented precondition."""


class ResourceLimitError(FermiModewiseError):
    """Raised when a dense Fock-space request exceeds the mode cap."""


class NotIsotropicError(FermiModewiseError):
    """Raised when a covariance matrix is not isotropic.

    Carries the measured deviation of M^2 from -lambda0^2 * identity.
    """

    def __init__(self, deviation: float, tol: float):
        self.deviation = deviation
        self.tol = tol
        super().__init__(
            f"covariance matrix is not isotropic: max|M^2 + lambda0^2| = "
            f"{deviation:.3e} exceeds tolerance {tol:.3e}"
        )


class NumericalConsistencyError(FermiModewiseError):
    """Raised when an internal identity that must hold for valid input fails."""
