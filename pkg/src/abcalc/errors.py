"""Exception hierarchy shared across the library.

Two families matter to callers: ``DomainError`` (the requested point is
outside an operator's domain) and ``ConvergenceError`` (the point is valid
but a series or quadrature failed to meet tolerance).  The CLI maps them to
exit codes 2 and 3.
"""


class ABCalcError(Exception):
    """Base class for all library errors."""


class DomainError(ABCalcError):
    """Requested parameters are outside the operator's domain."""


class PoleAtNonPositiveInteger(DomainError):
    """Gamma evaluated at (or within 1e-12 of) a non-positive integer."""


class DomainNotSupported(DomainError):
    """Formulation/parameter combination outside the supported region."""


class OrderIsNegativeInteger(DomainError):
    """Contour differintegral order in Z^- where the formula has poles."""


class OrderIsNaturalNumber(DomainError):
    """Contour AB-integral order in N where Gamma(1-nu) has poles."""


class MultiplierZero(DomainError):
    """|B(nu)| below 1e-12; the normalization cannot be divided out."""


class ZeroRate(DomainError):
    """Exponential rate a = 0 in a closed form requiring a != 0."""


class EvalDomainError(DomainError):
    """Expression evaluated where it is undefined (division by zero, 0^s)."""


class ConvergenceError(ABCalcError):
    """A numerical process failed to reach the requested tolerance."""


class NotConverged(ConvergenceError):
    """Series truncation stopped at max_terms without meeting tolerance.

    Carries the best partial value so diagnostics remain available.
    """

    def __init__(self, message, value=None, terms_used=None):
        super().__init__(message)
        self.value = value
        self.terms_used = terms_used


class ToleranceNotReached(ConvergenceError):
    """Adaptive quadrature exhausted its panel budget above tolerance."""


class EpsilonUnstable(ConvergenceError):
    """Hankel contour values at epsilon and epsilon/2 disagree badly."""
