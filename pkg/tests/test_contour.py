import cmath
import math

import numpy as np
import pytest

from abcalc import funcmodel as fm
from abcalc.contour import (
    ContourSpec,
    QuadratureResult,
    hankel_integrate,
    segment_integrate,
    singular_segment_integrate,
)
from abcalc.errors import DomainError

from . import oracle_values as ov


class TestSegmentIntegrate:
    def test_constant(self):
        got = segment_integrate(lambda w: np.ones_like(w), 0.0, 1 + 1j)
        assert got.value == pytest.approx(1 + 1j, abs=1e-12)

    def test_linear(self):
        got = segment_integrate(lambda w: w, 0.0, 2.0)
        assert got.value == pytest.approx(2.0, abs=1e-12)

    def test_exponential_euler(self):
        got = segment_integrate(np.exp, 0.0, 1j * math.pi)
        assert got.value == pytest.approx(-2.0, abs=1e-11)

    def test_scalar_integrand_broadcasts(self):
        got = segment_integrate(lambda w: 2.5, 0.0, 4.0)
        assert got.value == pytest.approx(10.0, abs=1e-12)

    def test_oscillatory_against_antiderivative(self):
        a, b = 0.3, 2.0 + 1.5j
        got = segment_integrate(lambda w: np.cos(5 * w), a, b)
        expected = (cmath.sin(5 * b) - cmath.sin(5 * a)) / 5
        assert abs(got.value - expected) < 1e-10

    def test_error_estimate_nonnegative(self):
        got = segment_integrate(lambda w: w ** 3, 0, 1)
        assert got.abs_err_estimate >= 0.0
        assert got.nodes_used >= 15


class TestSingularSegmentIntegrate:
    def test_pure_power(self):
        # f = 1: integral is (z-c)^s / s
        for s in (0.5, 1.3, 0.4 + 0.7j, 2.0):
            for c, z in ((0, 1), (0.5, 2 + 1j), (-1j, 1)):
                got = singular_segment_integrate(lambda w: np.ones_like(w),
                                                 c, z, s)
                expected = cmath.exp(s * cmath.log(z - c)) / s
                assert abs(got.value - expected) < 1e-10 * max(1, abs(expected))

    def test_beta_function_oracle(self):
        # f = w - c with s = 0.5 on [0,1] gives Beta(2, 1/2)
        got = singular_segment_integrate(lambda w: w, 0.0, 1.0, 0.5)
        assert abs(got.value - ov.BETA_2_0_5) < 1e-12

    def test_exponential_s_one(self):
        got = singular_segment_integrate(np.exp, 0.0, 1.0, 1.0)
        assert got.value == pytest.approx(math.e - 1.0, abs=1e-12)

    def test_branch_singular_integrand_at_basepoint(self):
        # f itself has a branch point at c: (w-c)^0.5 against (z-w)^(s-1)
        f = fm.power_function(0.0, 0.5)
        got = singular_segment_integrate(f, 0.0, 1.0, 0.5)
        expected = complex(
            math.gamma(1.5) * math.gamma(0.5) / math.gamma(2.0))
        assert abs(got.value - expected) < 1e-10

    def test_rejects_nonpositive_real_order(self):
        with pytest.raises(DomainError):
            singular_segment_integrate(lambda w: w, 0, 1, -0.2)


class TestHankelIntegrate:
    def test_cauchy_integral_formula_constant(self):
        spec = ContourSpec(0.0, 1.0)
        got = hankel_integrate(lambda w: np.ones_like(w), -1.0, spec)
        assert abs(got.value - 2j * math.pi) < 1e-10

    def test_cauchy_integral_formula_poly(self):
        spec = ContourSpec(0.0, 2.0)
        got = hankel_integrate(lambda w: w ** 2, -1.0, spec)
        assert abs(got.value - 2j * math.pi * 4.0) < 1e-9

    def test_collapse_identity_oracle(self):
        # for Re(s) in (-1,0):
        #   H-integral = (e^{-i pi s} - e^{i pi s}) * int_c^z (z-w)^s f(w) dw
        rng = np.random.default_rng(3)
        for _ in range(6):
            s = complex(rng.uniform(-0.9, -0.1), rng.uniform(-0.3, 0.3))
            c, z = 0.0, complex(rng.uniform(0.5, 1.5), rng.uniform(-0.4, 0.4))
            f = np.exp
            spec = ContourSpec(c, z, 0.05)
            lhs = hankel_integrate(f, s, spec, tol=1e-11)
            line = singular_segment_integrate(f, c, z, s + 1.0, tol=1e-12)
            rhs = (cmath.exp(-1j * math.pi * s)
                   - cmath.exp(1j * math.pi * s)) * line.value
            assert abs(lhs.value - rhs) < 1e-8 * max(1.0, abs(rhs)), (s, z)

    def test_closed_curve_entire_integrand(self):
        # integer s >= 0: single-valued integrand, contour closes, zero
        spec = ContourSpec(0.0, 1.5)
        for s in (0.0, 1.0, 2.0):
            got = hankel_integrate(np.exp, s, spec)
            assert abs(got.value) < 1e-10

    def test_epsilon_independence(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            s = complex(rng.uniform(-0.5, 1.0), rng.uniform(-0.5, 0.5))
            z = complex(rng.uniform(0.6, 1.4), rng.uniform(-0.3, 0.3))
            f = fm.parse("exp(z) + pow(z-0, 2)")
            vals = {}
            for eps in (0.2, 0.02):
                spec = ContourSpec(0.0, z, eps)
                res = hankel_integrate(f, s, spec, tol=1e-10,
                                       check_sensitivity=False)
                vals[eps] = res
            diff = abs(vals[0.2].value - vals[0.02].value)
            budget = 5 * max(vals[0.2].abs_err_estimate
                             + vals[0.02].abs_err_estimate, 1e-13)
            assert diff < max(budget, 1e-9), (s, z, diff)

    def test_sensitivity_included_in_error(self):
        spec = ContourSpec(0.0, 1.0, 0.1)
        got = hankel_integrate(np.exp, -0.5, spec, tol=1e-10)
        assert isinstance(got, QuadratureResult)
        assert got.abs_err_estimate >= 0

    def test_contour_spec_validation(self):
        with pytest.raises(DomainError):
            ContourSpec(1.0, 1.0)
        with pytest.raises(DomainError):
            ContourSpec(0.0, 1.0, epsilon=1.5)
