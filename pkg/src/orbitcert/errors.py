"""Exception types shared across the package."""


class OrbitCertError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZeroInterval(OrbitCertError):
    """Division by an interval that contains zero."""


class EigenvalueContainsZero(OrbitCertError):
    """An eigenvalue enclosure contains zero; Duhamel factors are undefined."""


class BasisMismatch(OrbitCertError):
    """Binary operation on tail vectors with incompatible bases."""


class HeadLengthMismatch(OrbitCertError):
    """Binary operation on tail vectors with different head lengths."""


class ExponentNotSummable(OrbitCertError):
    """A tail exponent is too small for the requested bound (needs s > 1, 5/2, ...)."""


class UnboundedRepresentation(OrbitCertError):
    """Norm requested for a tail vector whose represented set is unbounded."""


class AdmissibilityViolation(OrbitCertError):
    """Exponent pair (s1, s2) violates the admissibility constraints."""


class EnclosureNotFound(OrbitCertError):
    """The enclosure search exhausted its inflation/step-halving budget.

    Carries the last rejected candidate for diagnostics.
    """

    def __init__(self, message, last_candidate=None):
        super().__init__(message)
        self.last_candidate = last_candidate


class BlowUpDetected(OrbitCertError):
    """Non-rigorous integration produced coefficients beyond the blow-up guard."""


class NoConvergence(OrbitCertError):
    """Iterative search (orbit candidate, eigenpairs) did not converge in budget."""


class ConfigError(OrbitCertError):
    """Run configuration file is missing, malformed, or inconsistent."""
