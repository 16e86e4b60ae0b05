"""Exception types shared across the package."""


class KinkFactorError(Exception):
    """Base class for all package-specific errors."""


class DomainError(KinkFactorError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class UnsupportedFamilyError(KinkFactorError, ValueError):
    """The nonlinearity does not match any supported factorization family."""


class InfeasibleFactorizationError(KinkFactorError, ValueError):
    """The scale condition has no real solution for the given ansatz."""


class InconsistentFactorizationError(KinkFactorError, ValueError):
    """A factorization pair fails the constant-friction requirement."""


class InstabilityError(KinkFactorError, RuntimeError):
    """A numerical integration left its admissible region or blew up."""


class TruncatedRunError(KinkFactorError, RuntimeError):
    """A front simulation ran its front too close to a domain boundary."""


class CflError(KinkFactorError, ValueError):
    """The explicit time step violates the diffusive stability bound."""
