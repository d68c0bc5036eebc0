"""Iterated AB differintegral I^{nu,mu}: a two-parameter family containing
the AB integral (mu = 1), its whole-number iterates (mu = m), and the ABR
derivative (mu = -1), with a semigroup law in mu.

Three formulations:

    series:   sum_n binom(mu,n) (1-nu)^(mu-n) nu^n / B^mu * I^{n nu} f(z);
              terminates exactly at n = mu for whole-number mu.
    integral: the n = 0 term split off as ((1-nu)/B)^mu f(z) plus one
              endpoint-singular quadrature of the summed kernel (the
              distributional single-integral form is represented only by
              this split).
    hankel:   single contour integral of the binomial-weighted kernel tail
              against f(w)/(w-z), plus the explicit n = 0 Cauchy term.

All complex powers (1-nu)^(mu-n), B^mu are principal-branch.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import contour, rlops
from .abops import CANCELLATION_CAP, MultiplierFunction, operator_on_grid
from .contour import ContourSpec, DEFAULT_EPSILON
from .errors import DomainError, DomainNotSupported, NotConverged
from .rlops import EvalResult, RLRequest
from .specfn import (IM_FLOOR, SeriesControl, _SeriesAccumulator,
                     _reflection_factor, complex_log_gamma, reciprocal_gamma)

IAB_SERIES = SeriesControl(rel_tol=1e-12, max_terms=800, consecutive_small=3)

_NU_ONE_RADIUS = 1e-6

FORMULATIONS = ("series", "integral", "hankel", "auto")


@dataclass(frozen=True)
class IABRequest:
    f: object
    c: complex
    z: complex
    nu: complex
    mu: complex
    B: MultiplierFunction = field(default_factory=MultiplierFunction.constant_one)
    tol: float = 1e-8
    formulation: str = "auto"
    epsilon: float = DEFAULT_EPSILON
    series: SeriesControl = IAB_SERIES

    def __post_init__(self):
        if complex(self.c) == complex(self.z):
            raise DomainError("iterated AB operator requires c != z")
        nu = complex(self.nu)
        if abs(nu.imag) < 1e-12 and nu.real < 0:
            raise DomainNotSupported(
                f"iterated AB requires nu outside the negative real axis; "
                f"got {nu}")
        if abs(nu - 1.0) < _NU_ONE_RADIUS:
            raise DomainNotSupported("iterated AB is undefined at nu = 1")
        if self.formulation not in FORMULATIONS:
            raise DomainError(f"unknown formulation {self.formulation!r}")


def _whole_number(mu):
    return mu.imag == 0 and mu.real >= 0 and mu.real == round(mu.real)


def _prefactor(nu, mu, b):
    # ((1-nu)/B)^mu on principal branches of (1-nu)^mu and B^mu
    return cmath.exp(mu * (cmath.log(1.0 - nu) - cmath.log(b)))


def _binom_seq(mu):
    """Yields binom(mu, n) for n = 1, 2, ... by the product recurrence."""
    b = 1.0 + 0.0j
    n = 1
    while True:
        b *= (mu - n + 1.0) / n
        yield n, b
        n += 1


def _guard(nu, mu, c, z):
    q = abs(nu / (1.0 - nu)) * abs(z - c) ** nu.real
    if q > CANCELLATION_CAP:
        raise DomainNotSupported(
            f"iterated series at nu = {nu}, |z-c| = {abs(z - c):.3g} has "
            f"peak terms ~ exp({q:.1f}); cancellation would destroy the "
            f"result")


def _iab_series(req):
    nu, mu = complex(req.nu), complex(req.mu)
    _guard(nu, mu, complex(req.c), complex(req.z))
    b = req.B(nu)
    pref = _prefactor(nu, mu, b)
    q = nu / (1.0 - nu)
    acc = _SeriesAccumulator(req.series)
    whole = _whole_number(mu)
    stopped = acc.add(req.f(req.z))          # n = 0: I^0 f
    nodes = 0
    err = 0.0
    tol_term = max(req.tol * 0.05, 1e-11)
    for n, binom in _binom_seq(mu):
        if stopped:
            break
        if whole and n > mu.real:
            acc.converged = acc._tolerance_stop = True
            break
        rl = rlops.rl_integral(RLRequest(req.f, req.c, req.z, n * nu, tol_term))
        stopped = acc.add(binom * q ** n * rl.value)
        nodes += rl.nodes_used
        err += abs(binom * q ** n) * rl.abs_err_estimate
    out = acc.result()
    if not out.converged:
        raise NotConverged(
            f"iterated AB series did not converge at nu = {nu}, mu = {mu}",
            value=pref * out.value, terms_used=out.terms_used)
    return EvalResult(value=pref * out.value,
                      abs_err_estimate=abs(pref) * err,
                      terms_used=out.terms_used, nodes_used=nodes,
                      formulation="series")


def _kernel_tail_vec(mu, nu, us, ctl):
    """T(u) = sum_{n>=1} binom(mu,n) (nu/(1-nu))^n u^((n-1) nu) / Gamma(n nu),
    vectorized over segment offsets u = z - w.

    At u = 0 only the n = 1 term survives: T(0) = mu q / Gamma(nu)."""
    q = nu / (1.0 - nu)
    us = np.asarray(us, dtype=complex)
    zero = us == 0
    log_u = np.where(zero, 0.0, np.log(np.where(zero, 1.0, us)))
    total = np.zeros_like(log_u)
    small = 0
    whole = _whole_number(mu)
    for n, binom in _binom_seq(mu):
        if whole and n > mu.real:
            return total, True
        coeff = binom * q ** n * reciprocal_gamma(n * nu)
        powers = np.exp((n - 1) * nu * log_u)
        if n > 1:
            powers = np.where(zero, 0.0, powers)
        term = coeff * powers
        total += term
        tmax = float(np.max(np.abs(term)))
        if tmax < ctl.rel_tol * max(float(np.max(np.abs(total))), 1e-300):
            small += 1
            if small >= ctl.consecutive_small:
                return total, True
        else:
            small = 0
        if n >= ctl.max_terms:
            return total, False


def _iab_integral(req):
    nu, mu = complex(req.nu), complex(req.mu)
    if not nu.real > 0:
        raise DomainNotSupported(
            f"integral formulation needs Re(nu) > 0; got {nu}")
    _guard(nu, mu, complex(req.c), complex(req.z))
    b = req.B(nu)
    pref = _prefactor(nu, mu, b)
    z = complex(req.z)

    def weighted(w):
        u = z - np.asarray(w, dtype=complex)
        tail, ok = _kernel_tail_vec(mu, nu, u, req.series)
        if not ok:
            raise NotConverged("iterated kernel series stalled")
        return tail * req.f(w)

    quad = contour.singular_segment_integrate(weighted, req.c, req.z, nu,
                                              max(req.tol * 0.1, 1e-11))
    value = pref * (req.f(req.z) + quad.value)
    return EvalResult(value=value,
                      abs_err_estimate=abs(pref) * quad.abs_err_estimate,
                      nodes_used=quad.nodes_used, formulation="integral")


def _double_tail_vec(mu, nu, xs, ctl):
    """sum_{n>=1} binom(mu,n) Gamma(1-n nu) x^n over an array of x, with the
    reflection-stabilized Gamma(1-n nu) of the scalar tail."""
    xs = np.asarray(xs, dtype=complex)
    total = np.zeros_like(xs)
    power = np.ones_like(xs)
    small = 0
    whole = _whole_number(mu)
    for n, binom in _binom_seq(mu):
        if whole and n > mu.real:
            return total, True
        power = power * xs
        gamma_term = (-n * nu) * _reflection_factor(n, nu) * cmath.exp(
            -complex_log_gamma(1.0 + n * nu))
        term = binom * gamma_term * power
        total += term
        tmax = float(np.max(np.abs(term)))
        if tmax < ctl.rel_tol * max(float(np.max(np.abs(total))), 1e-300):
            small += 1
            if small >= ctl.consecutive_small:
                return total, True
        else:
            small = 0
        if n >= ctl.max_terms or not np.all(np.isfinite(power)):
            return total, False


def _iab_hankel(req):
    nu, mu = complex(req.nu), complex(req.mu)
    if abs(nu.imag) < IM_FLOOR:
        raise DomainNotSupported(
            f"contour formulation needs |Im(nu)| >= {IM_FLOOR}; got {nu}")
    if nu.real > 0:
        _guard(nu, mu, complex(req.c), complex(req.z))
    b = req.B(nu)
    pref = _prefactor(nu, mu, b)
    q = nu / (1.0 - nu)
    spec = ContourSpec(complex(req.c), complex(req.z), req.epsilon)
    state = {"converged": True}

    def kernel(w, pw):
        x = q * pw(nu)
        tail, ok = _double_tail_vec(mu, nu, x, req.series)
        if not ok:
            state["converged"] = False
        return tail * req.f(w) * pw(-1.0)

    quad = contour.hankel_integrate_kernel(kernel, spec,
                                           max(req.tol * 0.1, 1e-11),
                                           check_sensitivity=False)
    if not state["converged"]:
        raise NotConverged(
            f"iterated contour kernel series diverges at nu = {nu} "
            f"(outside the Re(nu) > 0 strip)")
    value = pref * (req.f(req.z) + quad.value / (2j * math.pi))
    return EvalResult(value=value,
                      abs_err_estimate=abs(pref) * quad.abs_err_estimate
                      / (2 * math.pi),
                      nodes_used=quad.nodes_used, formulation="hankel")


def iab(req: IABRequest) -> EvalResult:
    """Iterated AB differintegral to order (nu, mu)."""
    nu, mu = complex(req.nu), complex(req.mu)
    if mu == 0:
        return EvalResult(value=req.f(req.z), formulation="identity")
    if nu == 0:
        b = req.B(nu)
        return EvalResult(value=req.f(req.z) * cmath.exp(-mu * cmath.log(b)),
                          formulation="identity")
    form = req.formulation
    if form == "auto":
        if nu.real > 0:
            form = "series"
        elif abs(nu.imag) >= IM_FLOOR:
            form = "hankel"
        else:
            raise DomainNotSupported(
                f"no formulation available for nu = {nu}")
    if form == "series":
        if not nu.real > 0:
            raise DomainNotSupported(
                f"series formulation needs Re(nu) > 0; got {nu}")
        return _iab_series(req)
    if form == "integral":
        return _iab_integral(req)
    return _iab_hankel(req)


def iab_on_grid(f, c, z, nu, mu, B=None, tol=1e-8, grid_tol=1e-9):
    """Sampled iterated operator as a Chebyshev model on [c, z]."""
    B = B or MultiplierFunction.constant_one()
    nu, mu = complex(nu), complex(mu)
    limit = _prefactor(nu, mu, B(nu)) * f(c) if mu != 0 else f(c)

    def op(zz):
        return iab(IABRequest(f, c, zz, nu, mu, B=B, tol=tol,
                              formulation="series")).value

    return operator_on_grid(op, c, z, limit, grid_tol)


def iab_compose_check(nu, mu, rho, f, c, z, B=None, tol=1e-8,
                      fractions=(0.2, 0.4, 0.6, 0.8, 1.0)) -> float:
    """Max deviation over test nodes of I^{nu,mu} I^{nu,rho} f vs
    I^{nu,mu+rho} f, composing through the sampled-grid route."""
    B = B or MultiplierFunction.constant_one()
    c, z = complex(c), complex(z)
    inner = iab_on_grid(f, c, z, nu, rho, B=B, tol=tol)
    worst = 0.0
    for frac in fractions:
        zt = c + frac * (z - c)
        lhs = iab(IABRequest(inner, c, zt, nu, mu, B=B, tol=tol,
                             formulation="series")).value
        rhs = iab(IABRequest(f, c, zt, nu, complex(mu) + complex(rho), B=B,
                             tol=tol, formulation="series")).value
        worst = max(worst, abs(lhs - rhs))
    return worst
