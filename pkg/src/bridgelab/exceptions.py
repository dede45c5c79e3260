"""Exception hierarchy shared by all bridgelab modules."""


class BridgelabError(Exception):
    """Base class for all library-specific errors."""


class DomainError(BridgelabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConstructionInapplicableError(BridgelabError):
    """The ratio construction of a bridge density is undefined.

    Raised when the denominator transition density vanishes (e.g. a radial
    kernel pinned at zero in dimension >= 2).  Callers should switch to the
    limit construction, which handles the vanishing-endpoint case.
    """


class ComputationError(BridgelabError):
    """A numerical self-check failed (asymmetry, validation mismatch, ...)."""


class QuadratureError(BridgelabError):
    """Adaptive quadrature failed to converge within its subdivision budget."""

    def __init__(self, message, partial=None, estimate=None):
        super().__init__(message)
        self.partial = partial
        self.estimate = estimate
