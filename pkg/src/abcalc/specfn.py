"""Complex special functions underlying the fractional operators.

Provides the complex gamma function (Lanczos rational approximation with
reflection for Re(s) < 0.5), its entire reciprocal, the two-parameter
Mittag-Leffler function

    E_{nu,beta}(x) = sum_{n>=0} x^n / Gamma(n*nu + beta),

and the two contour-kernel tail series

    sum_{n>=1} Gamma(-n*nu) x^n
    sum_{n>=1} binom(mu,n) Gamma(1-n*nu) x^n,

which converge for Re(nu) > 0, nu not real.  Terms of the tails are
computed in the reflection-rewritten form

    Gamma(-n*nu) x^n = [2*pi*i / (e^{-i*n*pi*nu} - e^{i*n*pi*nu})]
                       * x^n / Gamma(1 + n*nu)

so gamma is never evaluated far into the left half-plane.  For Re(nu) <= 0
the tails are divergent asymptotic series; summation then truncates at the
smallest term and reports converged=False unless the plateau is below
tolerance.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainNotSupported, PoleAtNonPositiveInteger

# Below this |Im(nu)| the reflection denominators e^{-i n pi nu} - e^{i n pi nu}
# lose all significant digits; the tail series are refused rather than
# silently degraded.
IM_FLOOR = 1e-3

_POLE_TOL = 1e-12

# Lanczos g = 607/128, 15 terms (Godfrey / Pugh coefficient set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517, -59.597960355475491248, 14.136097974741747174,
    -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

_TWO_PI_I = 2j * math.pi
_LOG_2PI_HALF = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for all series in the library.

    Stops once `consecutive_small` successive terms fall below
    rel_tol * |partial sum|.
    """

    rel_tol: float = 1e-12
    max_terms: int = 500
    consecutive_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 8:
            raise ValueError("max_terms must be >= 8")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be >= 1")


DEFAULT_SERIES = SeriesControl()


@dataclass(frozen=True)
class MLValue:
    """A truncated series value with its convergence diagnostics."""

    value: complex
    terms_used: int
    converged: bool


def _near_nonpositive_integer(s):
    s = complex(s)
    if abs(s.imag) > _POLE_TOL:
        return False
    r = round(s.real)
    return r <= 0 and abs(s.real - r) <= _POLE_TOL


def _lanczos_series(z):
    a = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        a += _LANCZOS[k] / (z + k)
    return a


def complex_gamma(s):
    """Gamma(s) for complex s; raises at non-positive integers."""
    s = complex(s)
    if _near_nonpositive_integer(s):
        raise PoleAtNonPositiveInteger(f"gamma pole at s = {s}")
    if s.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * s) * complex_gamma(1.0 - s))
    z = s - 1.0
    t = z + _LANCZOS_G + 0.5
    # t**(z+0.5) through exp/log so overflow degrades to inf, not an exception
    try:
        power = cmath.exp((z + 0.5) * cmath.log(t))
    except OverflowError:
        return complex(math.inf, 0.0)
    try:
        return math.sqrt(2.0 * math.pi) * power * cmath.exp(-t) * _lanczos_series(z)
    except OverflowError:
        return complex(math.inf, 0.0)


def complex_log_gamma(s):
    """log Gamma(s), accurate modulo 2*pi*i (intended for exp()).

    Used to form ratios like x^n / Gamma(1 + n*nu) without overflow.
    """
    s = complex(s)
    if s.real >= 0.5:
        z = s - 1.0
        t = z + _LANCZOS_G + 0.5
        return (_LOG_2PI_HALF + (z + 0.5) * cmath.log(t) - t
                + cmath.log(_lanczos_series(z)))
    # reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1-s),
    # with log sin written to avoid overflow for large |Im(s)|
    return math.log(math.pi) - _log_sin_pi(s) - complex_log_gamma(1.0 - s)


def _log_sin_pi(s):
    # log(sin(pi s)) stable for large |Im(s)|; branch only correct mod 2*pi*i
    if s.imag > 0:
        # sin(pi s) = -e^{-i pi s} (1 - e^{2 i pi s}) / (2i)
        return (-1j * cmath.pi * s + cmath.log(1.0 - cmath.exp(2j * cmath.pi * s))
                + cmath.log(-1.0 / 2j))
    return (1j * cmath.pi * s + cmath.log(1.0 - cmath.exp(-2j * cmath.pi * s))
            + cmath.log(1.0 / 2j))


def reciprocal_gamma(s):
    """1/Gamma(s); entire, exactly zero at non-positive integers."""
    s = complex(s)
    if _near_nonpositive_integer(s):
        return 0.0 + 0.0j
    if s.imag == 0.0 and s.real == round(s.real) and 0 < s.real <= 171:
        return complex(1.0 / math.factorial(int(s.real) - 1))
    logg = complex_log_gamma(s)
    if logg.real > 700.0:
        return 0.0 + 0.0j
    if logg.real < -700.0:
        # gamma underflowed; reciprocal overflows — signal with inf
        return complex(math.inf, 0.0)
    return cmath.exp(-logg)


def complex_binomial(mu, n):
    """binom(mu, n) by the product recurrence prod_k (mu-k+1)/k.

    Exact zero when mu is a non-negative integer < n, where the
    gamma-quotient form is 0*inf.
    """
    if n < 0:
        raise ValueError("n must be a non-negative integer")
    mu = complex(mu)
    out = 1.0 + 0.0j
    for k in range(1, n + 1):
        out *= (mu - k + 1.0) / k
    return out


class _SeriesAccumulator:
    """Shared truncation logic: tolerance stop plus divergence detection.

    Mittag-Leffler-type term magnitudes are unimodal (ramp, peak, decay)
    while asymptotic tails decay to a minimum and then grow without bound.
    The divergence detector therefore arms only after terms have decayed
    below their starting magnitude; sustained growth past that point stops
    summation at the smallest-term partial sum (optimal truncation).
    """

    def __init__(self, ctl):
        self.ctl = ctl
        self.total = 0.0 + 0.0j
        self.n_small = 0
        self.n_grow = 0
        self.first_mag = None
        self.best_total = 0.0 + 0.0j
        self.best_mag = math.inf
        self.prev_mag = None
        self.terms = 0
        self.converged = False
        self._tolerance_stop = False

    @property
    def _armed(self):
        return self.first_mag is not None and self.best_mag < 0.5 * self.first_mag

    def add(self, term):
        """Feed one term; returns True when summation should stop."""
        term = complex(term)
        self.total += term
        self.terms += 1
        mag = abs(term)
        if self.first_mag is None and mag > 0:
            self.first_mag = mag
        if mag < self.ctl.rel_tol * max(abs(self.total), 1e-300):
            self.n_small += 1
            if self.n_small >= self.ctl.consecutive_small:
                self.converged = True
                self._tolerance_stop = True
                return True
        else:
            self.n_small = 0
        if mag <= self.best_mag:
            self.best_mag = mag
            self.best_total = self.total
            self.n_grow = 0
        elif self.prev_mag is not None and mag > self.prev_mag and self._armed:
            self.n_grow += 1
            if self.n_grow >= 5:
                return True
        else:
            self.n_grow = 0
        self.prev_mag = mag
        return self.terms >= self.ctl.max_terms

    def result(self):
        if self._tolerance_stop:
            return MLValue(self.total, self.terms, True)
        if self._armed:
            # rewind to the smallest-term partial sum
            ok = self.best_mag <= self.ctl.rel_tol * max(abs(self.best_total), 1e-300)
            return MLValue(self.best_total, self.terms, ok)
        return MLValue(self.total, self.terms, False)


def mittag_leffler(nu, beta, x, ctl=DEFAULT_SERIES):
    """E_{nu,beta}(x) by direct summation, Re(nu) > 0."""
    nu, beta, x = complex(nu), complex(beta), complex(x)
    if not nu.real > 0:
        raise DomainNotSupported("mittag_leffler requires Re(nu) > 0")
    if x == 0:
        return MLValue(reciprocal_gamma(beta), 1, True)
    logx = cmath.log(x)
    acc = _SeriesAccumulator(ctl)
    n = 0
    while True:
        arg = n * nu + beta
        if _near_nonpositive_integer(arg):
            term = 0.0 + 0.0j
        else:
            ex = n * logx - complex_log_gamma(arg)
            term = cmath.exp(ex) if ex.real < 700.0 else complex(math.inf, 0)
        if acc.add(term):
            return acc.result()
        n += 1


def _reflection_factor(n, nu):
    # 2*pi*i / (e^{-i n pi nu} - e^{i n pi nu}), written so the dominant
    # exponential is factored out (no overflow for any sign of Im(nu))
    if nu.imag > 0:
        return _TWO_PI_I * cmath.exp(1j * n * cmath.pi * nu) / (
            1.0 - cmath.exp(2j * n * cmath.pi * nu))
    return -_TWO_PI_I * cmath.exp(-1j * n * cmath.pi * nu) / (
        1.0 - cmath.exp(-2j * n * cmath.pi * nu))


def modified_ml_tail(nu, x, ctl=DEFAULT_SERIES):
    """sum_{n>=1} Gamma(-n*nu) x^n in reflection-rewritten form.

    The n = 0 term of the underlying kernel series is Gamma(0) and is
    excluded by contract; operator code supplies its regularized value.
    """
    nu, x = complex(nu), complex(x)
    if abs(nu.imag) < IM_FLOOR:
        raise DomainNotSupported(
            f"modified_ml_tail needs |Im(nu)| >= {IM_FLOOR}; got nu = {nu}")
    if x == 0:
        return MLValue(0.0 + 0.0j, 0, True)
    logx = cmath.log(x)
    acc = _SeriesAccumulator(ctl)
    n = 1
    while True:
        ex = n * logx - complex_log_gamma(1.0 + n * nu)
        term = _reflection_factor(n, nu) * (
            cmath.exp(ex) if ex.real < 700.0 else complex(math.inf, 0))
        if acc.add(term):
            return acc.result()
        n += 1


def modified_double_ml_tail(mu, nu, x, ctl=DEFAULT_SERIES):
    """sum_{n>=1} binom(mu,n) Gamma(1-n*nu) x^n, reflection-rewritten.

    Same stabilized terms as modified_ml_tail times binom(mu,n), using
    Gamma(1-n*nu) = -n*nu * Gamma(-n*nu).  The n = 0 term equals 1 and is
    handled by the caller (it is finite here).  Terminates exactly when mu
    is a non-negative integer.
    """
    mu, nu, x = complex(mu), complex(nu), complex(x)
    if abs(nu.imag) < IM_FLOOR:
        raise DomainNotSupported(
            f"modified_double_ml_tail needs |Im(nu)| >= {IM_FLOOR}; got nu = {nu}")
    if x == 0 or mu == 0:
        return MLValue(0.0 + 0.0j, 0, True)
    mu_int = (mu.imag == 0 and mu.real == round(mu.real) and mu.real >= 0)
    logx = cmath.log(x)
    acc = _SeriesAccumulator(ctl)
    binom = 1.0 + 0.0j
    n = 1
    while True:
        binom *= (mu - n + 1.0) / n
        if mu_int and n > mu.real:
            # series terminates exactly: binom(mu, n) = 0 from here on
            acc.converged = acc._tolerance_stop = True
            return acc.result()
        ex = n * logx - complex_log_gamma(1.0 + n * nu)
        term = binom * (-n * nu) * _reflection_factor(n, nu) * (
            cmath.exp(ex) if ex.real < 700.0 else complex(math.inf, 0))
        if acc.add(term):
            return acc.result()
        n += 1


def ml_kernel_values(nu, beta, xs, ctl=DEFAULT_SERIES):
    """Vectorized E_{nu,beta} over an array of arguments.

    Shares one term counter across all points (collective stopping) so the
    result is deterministic regardless of evaluation batching.  Quadrature
    kernels call this with |x| <= ~10.
    """
    nu, beta = complex(nu), complex(beta)
    if not nu.real > 0:
        raise DomainNotSupported("ml_kernel_values requires Re(nu) > 0")
    xs = np.asarray(xs, dtype=complex)
    total = np.zeros_like(xs)
    power = np.ones_like(xs)
    small = 0
    for n in range(ctl.max_terms):
        coeff = reciprocal_gamma(n * nu + beta)
        term = coeff * power
        total += term
        tmax = float(np.max(np.abs(term)))
        if tmax < ctl.rel_tol * max(float(np.max(np.abs(total))), 1e-300):
            small += 1
            if small >= ctl.consecutive_small:
                return total, n + 1, True
        else:
            small = 0
        power = power * xs
        if not np.all(np.isfinite(power)):
            break
    return total, ctl.max_terms, False
