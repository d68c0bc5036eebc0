"""Riemann-Liouville differintegrals: classical line-integral forms and the
contour (Hankel) form that continues them to complex orders.

Conventions: rl_integral and rl_derivative take their natural positive
orders; rl_cauchy takes the derivative-convention order nuD (so the RL
integral of order nu is rl_cauchy at nuD = -nu).  For analytic f the two
routes agree, which the test suite exercises as a cross-check.
"""

import cmath
import math
from dataclasses import dataclass, field

from . import contour, funcmodel
from .contour import ContourSpec, DEFAULT_EPSILON
from .errors import DomainError, OrderIsNegativeInteger, ZeroRate
from .specfn import complex_gamma, reciprocal_gamma


@dataclass(frozen=True)
class RLRequest:
    f: object                      # FunctionExpr or compatible callable
    c: complex
    z: complex
    nu: complex
    tol: float = 1e-10

    def __post_init__(self):
        if complex(self.c) == complex(self.z):
            raise DomainError("differintegral requires c != z")
        if not self.tol > 0:
            raise DomainError("tol must be positive")


@dataclass(frozen=True)
class EvalResult:
    """Operator value with numerical diagnostics."""

    value: complex
    abs_err_estimate: float = 0.0
    terms_used: int = 0
    nodes_used: int = 0
    converged: bool = True
    formulation: str = ""

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


def rl_integral(req: RLRequest) -> EvalResult:
    """RL integral of order nu, Re(nu) > 0: the weighted line integral
    (1/Gamma(nu)) * int_c^z (z-w)^(nu-1) f(w) dw."""
    nu = complex(req.nu)
    if not nu.real > 0:
        raise DomainError(
            f"rl_integral requires Re(nu) > 0 (got {nu}); use rl_cauchy")
    quad = contour.singular_segment_integrate(req.f, req.c, req.z, nu, req.tol)
    inv_gamma = reciprocal_gamma(nu)
    return EvalResult(
        value=quad.value * inv_gamma,
        abs_err_estimate=quad.abs_err_estimate * abs(inv_gamma),
        nodes_used=quad.nodes_used,
        formulation="integral",
    )


def _nth_derivative(f, n):
    for _ in range(n):
        f = f.derivative()
    return f


def rl_derivative(req: RLRequest) -> EvalResult:
    """RL derivative of order nu, Re(nu) >= 0.

    For analytic f, the outer d^n/dz^n with n = floor(Re nu) + 1 is realized
    analytically through repeated integration by parts:

        D^nu f = sum_{k<n} f^(k)(c) (z-c)^(k-nu) / Gamma(k-nu+1)
                 + I^(n-nu) f^(n),

    which avoids differentiating a quadrature output numerically.
    """
    nu = complex(req.nu)
    if nu.real < 0:
        raise DomainError(f"rl_derivative requires Re(nu) >= 0 (got {nu})")
    if nu.imag == 0 and nu.real == round(nu.real):
        # integer order: plain symbolic derivative
        k = int(nu.real)
        return EvalResult(value=_nth_derivative(req.f, k)(req.z),
                          formulation="derivative")
    n = math.floor(nu.real) + 1
    h = complex(req.z) - complex(req.c)
    boundary = 0j
    g = req.f
    for k in range(n):
        coeff = reciprocal_gamma(k - nu + 1.0)
        if coeff != 0:
            boundary += g(req.c) * cmath.exp((k - nu) * cmath.log(h)) * coeff
        g = g.derivative()
    inner = rl_integral(RLRequest(g, req.c, req.z, n - nu, req.tol))
    return EvalResult(
        value=boundary + inner.value,
        abs_err_estimate=inner.abs_err_estimate,
        nodes_used=inner.nodes_used,
        formulation="derivative",
    )


def rl_cauchy(req: RLRequest, epsilon: float = DEFAULT_EPSILON,
              check_sensitivity: bool = False) -> EvalResult:
    """Contour form of the differintegral at derivative-convention order
    nuD = req.nu, valid for any nuD not a negative integer:

        D^nuD f = Gamma(nuD + 1) / (2 pi i) * int_H (w-z)^(-nuD-1) f(w) dw.
    """
    nu_d = complex(req.nu)
    if (nu_d.imag == 0 and nu_d.real < 0
            and abs(nu_d.real - round(nu_d.real)) < 1e-12):
        raise OrderIsNegativeInteger(
            f"contour differintegral undefined at order {nu_d}")
    spec = ContourSpec(complex(req.c), complex(req.z), epsilon)
    quad = contour.hankel_integrate(req.f, -nu_d - 1.0, spec, req.tol,
                                    check_sensitivity=check_sensitivity)
    scale = complex_gamma(nu_d + 1.0) / (2j * math.pi)
    return EvalResult(
        value=scale * quad.value,
        abs_err_estimate=abs(scale) * quad.abs_err_estimate,
        nodes_used=quad.nodes_used,
        formulation="hankel",
    )


def rl_differintegral(f, c, z, nu, tol=1e-10,
                      epsilon: float = DEFAULT_EPSILON) -> EvalResult:
    """RL integral of order nu for any nu with -nu not a negative integer.

    Routes to the line-integral form for Re(nu) > 0, the identity at
    nu = 0, and the contour form otherwise.
    """
    nu = complex(nu)
    if nu == 0:
        return EvalResult(value=f(z), formulation="identity")
    if nu.real > 0:
        return rl_integral(RLRequest(f, c, z, nu, tol))
    return rl_cauchy(RLRequest(f, c, z, -nu, tol), epsilon=epsilon)


def rl_infinite_basepoint_exp(a, nu, z) -> complex:
    """Closed form for the RL integral of e^(a z) with basepoint -infinity:
    a^(-nu) e^(a z), principal branch of a^(-nu)."""
    a, nu, z = complex(a), complex(nu), complex(z)
    if a == 0:
        raise ZeroRate("exponential rate a must be nonzero")
    return cmath.exp(-nu * cmath.log(a)) * cmath.exp(a * z)
