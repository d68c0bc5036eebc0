"""Atangana-Baleanu operators: the AB integral and the AB derivatives of
Riemann-Liouville type (ABR) and Caputo type (ABC), each in up to three
formulations.

    series: B/(1-nu) * sum_n (-nu/(1-nu))^n I^{n nu} f(z)        (reference)
    kernel: Mittag-Leffler-kernel line integral, outer d/dz by central
            differences plus one Richardson level                (validator)
    hankel: term-wise contour series around z; the n = 0 term is the exact
            Cauchy-formula value f(z) (ABR) or f(z) - f(c) (ABC), which
            regularizes the Gamma(0) coefficient of the raw kernel series

The series and kernel forms require Re(nu) > 0; the contour form requires
nu off the real axis and is the analytic-continuation route.  At nu = 1
every formulation returns f'(z): the singularity there is removable.

Term magnitudes of the series scale like exp(q) with
q = |nu/(1-nu)| |z-c|^Re(nu), so floating-point cancellation destroys
roughly q/ln(10) digits; requests in that regime are refused (see
CANCELLATION_CAP) rather than answered with noise.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import contour, rlops
from .chebfit import ChebInterpolant
from .contour import ContourSpec, DEFAULT_EPSILON
from .errors import (DomainError, DomainNotSupported, MultiplierZero,
                     NotConverged, OrderIsNaturalNumber, ZeroRate)
from .rlops import EvalResult, RLRequest
from .specfn import (DEFAULT_SERIES, IM_FLOOR, _SeriesAccumulator,
                     complex_gamma, ml_kernel_values, reciprocal_gamma)

# |nu/(1-nu)| * |z-c|^Re(nu) beyond which series cancellation costs more
# than ~12 digits
CANCELLATION_CAP = 28.0

_NEAR = 1e-12


def _const_one(nu):
    return 1.0 + 0.0j


def _ab_norm(nu):
    nu = complex(nu)
    return 1.0 - nu + nu * reciprocal_gamma(nu)


@dataclass(frozen=True)
class MultiplierFunction:
    """Normalization B(nu): analytic and nonzero where queried."""

    kind: str
    evaluator: object

    def __call__(self, nu):
        b = complex(self.evaluator(complex(nu)))
        if abs(b) <= 1e-12:
            raise MultiplierZero(f"B(nu) = {b} at nu = {nu}")
        return b

    @classmethod
    def constant_one(cls):
        return cls("constant_one", _const_one)

    @classmethod
    def ab_normalization(cls):
        """B(nu) = 1 - nu + nu/Gamma(nu), the common normalization choice."""
        return cls("ab_normalization", _ab_norm)

    @classmethod
    def from_callable(cls, fn):
        return cls("user_table", fn)


B_ONE = MultiplierFunction.constant_one()
B_ABNORM = MultiplierFunction.ab_normalization()

FORMULATIONS = ("kernel", "series", "hankel", "auto")


@dataclass(frozen=True)
class ABRequest:
    f: object
    c: complex
    z: complex
    nu: complex
    B: MultiplierFunction = field(default_factory=MultiplierFunction.constant_one)
    tol: float = 1e-8
    formulation: str = "auto"
    epsilon: float = DEFAULT_EPSILON
    series: object = DEFAULT_SERIES

    def __post_init__(self):
        if complex(self.c) == complex(self.z):
            raise DomainError("AB operator requires c != z")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.formulation not in FORMULATIONS:
            raise DomainError(f"unknown formulation {self.formulation!r}")


def _is_near_real_negative(nu):
    return abs(nu.imag) < _NEAR and nu.real < 0


def _is_near(nu, value):
    return abs(nu - value) < _NEAR


def _check_derivative_order(nu):
    if _is_near_real_negative(nu):
        raise DomainNotSupported(
            f"AB derivatives are defined for nu outside the negative real "
            f"axis; got {nu}")


def _q_factor(nu, c, z):
    return abs(nu / (1.0 - nu)) * abs(z - c) ** nu.real


def _guard_cancellation(nu, c, z):
    q = _q_factor(nu, c, z)
    if q > CANCELLATION_CAP:
        raise DomainNotSupported(
            f"series for nu = {nu} at |z-c| = {abs(z - c):.3g} has peak "
            f"terms ~ exp({q:.1f}); cancellation would destroy the result. "
            f"Reduce |z-c| or move nu away from 1.")


def _pick(req):
    nu = complex(req.nu)
    if req.formulation != "auto":
        return req.formulation
    if _is_near(nu, 1.0):
        return "series"          # handled by the removable-value shortcut
    if nu.real > 0:
        return "series"
    if abs(nu.imag) >= IM_FLOOR:
        return "hankel"
    raise DomainNotSupported(
        f"no formulation available for nu = {nu}: need Re(nu) > 0 or "
        f"|Im(nu)| >= {IM_FLOOR}")


def ab_integral(req: ABRequest) -> EvalResult:
    """AB integral ((1-nu) f(z) + nu * I^nu f(z)) / B(nu), any nu in C
    with nu not a positive integer when the contour route is needed."""
    nu = complex(req.nu)
    b = req.B(nu)
    fz = req.f(req.z)
    if nu == 0:
        return EvalResult(value=fz / b, formulation="identity")
    rl = rlops.rl_differintegral(req.f, req.c, req.z, nu, req.tol,
                                 epsilon=req.epsilon)
    return EvalResult(
        value=((1.0 - nu) * fz + nu * rl.value) / b,
        abs_err_estimate=abs(nu / b) * rl.abs_err_estimate,
        nodes_used=rl.nodes_used,
        formulation=rl.formulation,
    )


def ab_integral_hankel(req: ABRequest) -> EvalResult:
    """Single-kernel contour form of the AB integral,

        (1/(2 pi i B)) int_H [(1-nu)/(w-z) + nu Gamma(1-nu)/(w-z)^(1-nu)] f dw,

    valid for nu not a natural number."""
    nu = complex(req.nu)
    if nu.imag == 0 and nu.real >= 1 and abs(nu.real - round(nu.real)) < _NEAR:
        raise OrderIsNaturalNumber(
            f"contour AB integral has Gamma(1-nu) poles at natural nu; "
            f"got {nu}")
    b = req.B(nu)
    spec = ContourSpec(complex(req.c), complex(req.z), req.epsilon)
    gamma_term = complex_gamma(1.0 - nu)

    def kernel(w, pw):
        return ((1.0 - nu) * pw(-1.0)
                + nu * gamma_term * pw(nu - 1.0)) * req.f(w)

    quad = contour.hankel_integrate_kernel(kernel, spec, req.tol,
                                           check_sensitivity=False)
    scale = 1.0 / (2j * math.pi * b)
    return EvalResult(
        value=scale * quad.value,
        abs_err_estimate=abs(scale) * quad.abs_err_estimate,
        nodes_used=quad.nodes_used,
        formulation="hankel",
    )


def _series_terms_common(req, orders_offset, use_derivative):
    """Shared series path for ABR (offset 0, f) and ABC (offset 1, f')."""
    nu = complex(req.nu)
    _guard_cancellation(nu, complex(req.c), complex(req.z))
    g = req.f.derivative() if use_derivative else req.f
    ratio = -nu / (1.0 - nu)
    acc = _SeriesAccumulator(req.series)
    nodes = 0
    err = 0.0
    # n = 0: I^0 f = f(z) for ABR; I^1 f' = f(z) - f(c) for ABC
    if use_derivative:
        first = req.f(req.z) - req.f(req.c)
    else:
        first = req.f(req.z)
    stopped = acc.add(first)
    n = 1
    tol_term = max(req.tol * 0.05, 1e-11)
    while not stopped:
        order = n * nu + orders_offset
        rl = rlops.rl_integral(RLRequest(g, req.c, req.z, order, tol_term))
        coef = ratio ** n
        stopped = acc.add(coef * rl.value)
        nodes += rl.nodes_used
        err += abs(coef) * rl.abs_err_estimate
        n += 1
    out = acc.result()
    if not out.converged:
        raise NotConverged(
            f"AB series did not converge in {out.terms_used} terms at nu = {nu}",
            value=out.value, terms_used=out.terms_used)
    return out, nodes, err


def _kernel_transform(f_or_deriv, c, zeta, nu, tol, series_ctl):
    """int_c^zeta E_nu(-nu/(1-nu) (zeta-y)^nu) g(y) dy by graded quadrature."""
    ratio = -nu / (1.0 - nu)

    def g(y):
        dz = zeta - np.asarray(y, dtype=complex)
        nzargs = np.where(dz != 0, dz, 1.0)
        powered = np.where(dz != 0,
                           np.exp(nu * np.log(nzargs)), 0.0)
        kernel_vals, _, ok = ml_kernel_values(nu, 1.0, ratio * powered,
                                              series_ctl)
        if not ok:
            raise NotConverged("Mittag-Leffler kernel series stalled")
        return kernel_vals * f_or_deriv(y)

    return contour.singular_segment_integrate(g, c, zeta, 1.0, tol)


def _abr_kernel(req):
    nu = complex(req.nu)
    if not nu.real > 0:
        raise DomainNotSupported("kernel formulation needs Re(nu) > 0")
    _guard_cancellation(nu, complex(req.c), complex(req.z))
    z, c = complex(req.z), complex(req.c)
    h_mag = 1e-4 * abs(z - c)
    direction = (z - c) / abs(z - c)
    step = h_mag * direction
    inner_tol = max(req.tol * h_mag * 0.05, 1e-14)

    def phi(zeta):
        return _kernel_transform(req.f, c, zeta, nu, inner_tol,
                                 req.series).value

    # central differences at h and h/2 with one Richardson extrapolation
    d_h = (phi(z + step) - phi(z - step)) / (2.0 * step)
    d_h2 = (phi(z + 0.5 * step) - phi(z - 0.5 * step)) / step
    derivative = (4.0 * d_h2 - d_h) / 3.0
    b = req.B(nu)
    scale = b / (1.0 - nu)
    return EvalResult(
        value=scale * derivative,
        abs_err_estimate=abs(scale) * (abs(d_h2 - d_h) / 3.0
                                       + inner_tol / h_mag),
        formulation="kernel",
    )


def _abc_kernel(req):
    nu = complex(req.nu)
    if not nu.real > 0:
        raise DomainNotSupported("kernel formulation needs Re(nu) > 0")
    _guard_cancellation(nu, complex(req.c), complex(req.z))
    quad = _kernel_transform(req.f.derivative(), complex(req.c),
                             complex(req.z), nu, req.tol * 0.1, req.series)
    b = req.B(nu)
    scale = b / (1.0 - nu)
    return EvalResult(
        value=scale * quad.value,
        abs_err_estimate=abs(scale) * quad.abs_err_estimate,
        nodes_used=quad.nodes_used,
        formulation="kernel",
    )


def _hankel_series(req, use_derivative):
    """Term-wise contour series for ABR (exponents n nu - 1 on f) and ABC
    (exponents n nu on f')."""
    nu = complex(req.nu)
    if abs(nu.imag) < IM_FLOOR:
        raise DomainNotSupported(
            f"contour formulation needs |Im(nu)| >= {IM_FLOOR}; got {nu}")
    if nu.real > 0:
        _guard_cancellation(nu, complex(req.c), complex(req.z))
    spec = ContourSpec(complex(req.c), complex(req.z), req.epsilon)
    g = req.f.derivative() if use_derivative else req.f
    ratio = -nu / (1.0 - nu)
    inv_2pii = 1.0 / (2j * math.pi)
    acc = _SeriesAccumulator(req.series)
    if use_derivative:
        first = req.f(req.z) - req.f(req.c)   # regularized RL I^1 f'
    else:
        first = req.f(req.z)                  # Cauchy integral formula
    stopped = acc.add(first)
    nodes = 0
    err = 0.0
    tol_term = max(req.tol * 0.05, 1e-11)
    n = 1
    while not stopped:
        if use_derivative:
            coef = complex_gamma(-n * nu) * ratio ** n * inv_2pii
            s = n * nu
        else:
            coef = complex_gamma(1.0 - n * nu) * ratio ** n * inv_2pii
            s = n * nu - 1.0
        quad = contour.hankel_integrate(g, s, spec, tol_term,
                                        check_sensitivity=False)
        stopped = acc.add(coef * quad.value)
        nodes += quad.nodes_used
        err += abs(coef) * quad.abs_err_estimate
        n += 1
    out = acc.result()
    if not out.converged:
        raise NotConverged(
            f"contour series did not converge in {out.terms_used} terms at "
            f"nu = {nu} (divergent beyond the Re(nu) > 0 strip)",
            value=out.value, terms_used=out.terms_used)
    return out, nodes, err


def _derivative_common(req, use_derivative):
    nu = complex(req.nu)
    _check_derivative_order(nu)
    if _is_near(nu, 1.0):
        # removable singularity: the kernel collapses to a point mass
        fp = req.f.derivative()
        return EvalResult(value=fp(req.z), formulation="removable-limit")
    form = _pick(req)
    if form == "series":
        if not nu.real > 0:
            raise DomainNotSupported(
                f"series formulation needs Re(nu) > 0; got {nu}")
        out, nodes, err = _series_terms_common(req, 1.0 if use_derivative
                                               else 0.0, use_derivative)
        b = req.B(nu)
        scale = b / (1.0 - nu)
        return EvalResult(value=scale * out.value,
                          abs_err_estimate=abs(scale) * err,
                          terms_used=out.terms_used, nodes_used=nodes,
                          converged=out.converged, formulation="series")
    if form == "kernel":
        return _abc_kernel(req) if use_derivative else _abr_kernel(req)
    out, nodes, err = _hankel_series(req, use_derivative)
    b = req.B(nu)
    scale = b / (1.0 - nu)
    return EvalResult(value=scale * out.value,
                      abs_err_estimate=abs(scale) * err,
                      terms_used=out.terms_used, nodes_used=nodes,
                      converged=out.converged, formulation="hankel")


def abr_derivative(req: ABRequest) -> EvalResult:
    """AB derivative of Riemann-Liouville type."""
    return _derivative_common(req, use_derivative=False)


def abc_derivative(req: ABRequest) -> EvalResult:
    """AB derivative of Caputo type (acts on the symbolic derivative f')."""
    return _derivative_common(req, use_derivative=True)


# ---------------------------------------------------------------------------
# closed-route evaluations for exponentials with basepoint -infinity
# ---------------------------------------------------------------------------

def ab_integral_exp(a, nu, z, B=B_ONE) -> EvalResult:
    """AB integral of e^(a z) with basepoint -infinity (closed form)."""
    a, nu, z = complex(a), complex(nu), complex(z)
    if a == 0:
        raise ZeroRate("exponential rate a must be nonzero")
    b = B(nu)
    a_pow = cmath.exp(-nu * cmath.log(a))
    value = cmath.exp(a * z) * (1.0 - nu + nu * a_pow) / b
    return EvalResult(value=value, formulation="closed-form")


def _exp_series(a, nu, z, B, ctl, caputo):
    a, nu, z = complex(a), complex(nu), complex(z)
    if a == 0:
        raise ZeroRate("exponential rate a must be nonzero")
    ratio = -nu / (1.0 - nu)
    gratio = abs(ratio * cmath.exp(-nu * cmath.log(a)))
    if gratio >= 1.0:
        raise DomainNotSupported(
            f"geometric series ratio |(-nu/(1-nu)) a^-nu| = {gratio:.3f} >= 1; "
            f"the series route is invalid here")
    acc = _SeriesAccumulator(ctl)
    n = 0
    while True:
        if caputo:
            term = ratio ** n * a * rlops.rl_infinite_basepoint_exp(
                a, n * nu + 1.0, z)
        else:
            term = ratio ** n * rlops.rl_infinite_basepoint_exp(a, n * nu, z)
        if acc.add(term):
            break
        n += 1
    out = acc.result()
    if not out.converged:
        raise NotConverged("exponential series did not converge",
                           value=out.value, terms_used=out.terms_used)
    b = B(nu)
    return EvalResult(value=out.value * b / (1.0 - nu),
                      terms_used=out.terms_used, converged=True,
                      formulation="series")


def abr_derivative_exp(a, nu, z, B=B_ONE, ctl=DEFAULT_SERIES) -> EvalResult:
    """ABR derivative of e^(a z), basepoint -infinity, by the term-wise
    series of closed-form RL integrals."""
    return _exp_series(a, nu, z, B, ctl, caputo=False)


def abc_derivative_exp(a, nu, z, B=B_ONE, ctl=DEFAULT_SERIES) -> EvalResult:
    """ABC derivative of e^(a z), basepoint -infinity (series route on f')."""
    return _exp_series(a, nu, z, B, ctl, caputo=True)


# ---------------------------------------------------------------------------
# operator composition on a grid
# ---------------------------------------------------------------------------

def operator_on_grid(op, c, z, at_basepoint, tol=1e-9) -> ChebInterpolant:
    """Sample a scalar operator z' |-> op(z') on [c, z] and return a
    piecewise Chebyshev model usable as the input of another operator.

    at_basepoint supplies the operator's limit value at z' = c (operators
    themselves require c != z).
    """
    c, z = complex(c), complex(z)

    def func(zz):
        if zz == c:
            return at_basepoint
        return op(zz)

    return ChebInterpolant.build(func, c, z, tol=tol)


def abr_on_grid(f, c, z, nu, B=B_ONE, tol=1e-8, grid_tol=1e-9):
    limit = B(complex(nu)) / (1.0 - complex(nu)) * f(c)
    return operator_on_grid(
        lambda zz: abr_derivative(
            ABRequest(f, c, zz, nu, B=B, tol=tol, formulation="series")).value,
        c, z, limit, grid_tol)


def abc_on_grid(f, c, z, nu, B=B_ONE, tol=1e-8, grid_tol=1e-9):
    return operator_on_grid(
        lambda zz: abc_derivative(
            ABRequest(f, c, zz, nu, B=B, tol=tol, formulation="series")).value,
        c, z, 0.0 + 0.0j, grid_tol)


def ab_integral_on_grid(f, c, z, nu, B=B_ONE, tol=1e-8, grid_tol=1e-9):
    limit = (1.0 - complex(nu)) / B(complex(nu)) * f(c)
    return operator_on_grid(
        lambda zz: ab_integral(ABRequest(f, c, zz, nu, B=B, tol=tol)).value,
        c, z, limit, grid_tol)
