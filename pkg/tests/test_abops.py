import cmath

import pytest

from abcalc import funcmodel as fm
from abcalc.abops import (
    ABRequest,
    B_ABNORM,
    B_ONE,
    MultiplierFunction,
    ab_integral,
    ab_integral_exp,
    ab_integral_hankel,
    ab_integral_on_grid,
    abc_derivative,
    abc_derivative_exp,
    abc_on_grid,
    abr_derivative,
    abr_derivative_exp,
    abr_on_grid,
)
from abcalc.errors import (DomainNotSupported, MultiplierZero, NotConverged,
                           OrderIsNaturalNumber)
from abcalc.specfn import complex_gamma, mittag_leffler

from . import oracle_values as ov


def ab_integral_power_closed(alpha, nu, h, b=1.0):
    """((1-nu) h^a + nu h^(a+nu) G(a+1)/G(a+nu+1)) / B"""
    ratio = complex_gamma(alpha + 1.0) / complex_gamma(alpha + nu + 1.0)
    ha = cmath.exp(alpha * cmath.log(h))
    hn = cmath.exp(nu * cmath.log(h))
    return ha * (1.0 - nu + nu * hn * ratio) / b


def ab_derivative_power_closed(alpha, nu, h, b=1.0):
    """b/(1-nu) * h^a G(a+1) E_{nu,a+1}(-nu/(1-nu) h^nu)"""
    x = -nu / (1.0 - nu) * cmath.exp(nu * cmath.log(h))
    ml = mittag_leffler(nu, alpha + 1.0, x)
    assert ml.converged
    ha = cmath.exp(alpha * cmath.log(h))
    return b / (1.0 - nu) * ha * complex_gamma(alpha + 1.0) * ml.value


class TestABIntegral:
    def test_golden_oracle_linear(self):
        got = ab_integral(ABRequest(fm.power_function(0, 1.0), 0, 1, 0.5,
                                    tol=1e-10))
        assert abs(got.value - ov.AB_INT_POW_A1_NU05_H1) < 1e-10

    def test_golden_oracle_complex_order(self):
        got = ab_integral(ABRequest(fm.power_function(0, 1.5), 0, 2,
                                    0.5 + 0.4j, tol=1e-10))
        assert abs(got.value - ov.AB_INT_POW_A15_NUC_H2) < 1e-9

    def test_power_closed_form_grid(self):
        for alpha in (0.5, 1.0, 2.0):
            for nu in (0.3, 0.7, 0.5 + 0.4j):
                for h in (0.5, 1.0, 2.0):
                    got = ab_integral(ABRequest(
                        fm.power_function(0, alpha), 0, h, nu, tol=1e-10))
                    want = ab_integral_power_closed(alpha, nu, h)
                    rel = abs(got.value - want) / abs(want)
                    assert rel < 1e-8, (alpha, nu, h)

    def test_order_zero_is_identity(self):
        f = fm.parse("exp(z) + pow(z-0,2)")
        got = ab_integral(ABRequest(f, 0, 0.8, 0.0))
        assert got.value == pytest.approx(f(0.8))

    def test_negative_real_order_supported(self):
        # the AB integral continues to all complex nu, including R^-
        got = ab_integral(ABRequest(fm.power_function(0, 1.0), 0, 1, -0.5,
                                    tol=1e-9))
        want = 1.5 - 0.5 * (complex_gamma(2.0) / complex_gamma(1.5))
        assert abs(got.value - want) < 1e-7

    def test_exponential_closed_form(self):
        a, nu, z = 2.0, 0.5, 0.3
        got = ab_integral_exp(a, nu, z)
        want = cmath.exp(a * z) * (1 - nu + nu * a ** -nu)
        assert got.value == pytest.approx(want, rel=1e-12)


class TestABIntegralHankel:
    def test_agreement_with_direct_real_order(self):
        f = fm.exponential(1.0)
        direct = ab_integral(ABRequest(f, 0, 1, 0.5, tol=1e-10))
        cont = ab_integral_hankel(ABRequest(f, 0, 1, 0.5, tol=1e-9))
        assert abs(direct.value - cont.value) < 1e-7

    def test_agreement_complex_order(self):
        f = fm.exponential(1.0)
        direct = ab_integral(ABRequest(f, 0, 1, 0.5 + 0.5j, tol=1e-10))
        cont = ab_integral_hankel(ABRequest(f, 0, 1, 0.5 + 0.5j, tol=1e-9))
        assert abs(direct.value - cont.value) < 1e-7

    def test_agreement_negative_real_part(self):
        f = fm.parse("pow(z-0,2) + exp(z)")
        nu = -0.4 + 0.3j
        direct = ab_integral(ABRequest(f, 0, 1, nu, tol=1e-9))
        cont = ab_integral_hankel(ABRequest(f, 0, 1, nu, tol=1e-9))
        assert abs(direct.value - cont.value) < 1e-7

    def test_constant_function_closed_form(self):
        nu = 0.7
        got = ab_integral_hankel(ABRequest(fm.constant(1.0), 0, 1.5, nu,
                                           tol=1e-9))
        want = (1 - nu + nu * 1.5 ** nu / complex_gamma(nu + 1.0))
        assert abs(got.value - want) < 1e-8

    def test_rejects_natural_order(self):
        with pytest.raises(OrderIsNaturalNumber):
            ab_integral_hankel(ABRequest(fm.constant(1.0), 0, 1, 2.0))


class TestABDerivatives:
    def test_golden_oracle(self):
        got = abr_derivative(ABRequest(fm.power_function(0, 1.0), 0, 1, 0.5,
                                       tol=1e-10))
        assert abs(got.value - ov.ABR_POW_A1_NU05_H1) < 1e-10

    def test_golden_oracle_small_alpha(self):
        got = abr_derivative(ABRequest(fm.power_function(0, 0.5), 0, 0.5,
                                       0.3, tol=1e-10))
        assert abs(got.value - ov.ABR_POW_A05_NU03_H05) < 1e-9

    def test_abr_abc_coincide_on_powers(self):
        for alpha in (0.5, 1.0, 2.0):
            for nu in (0.3, 0.7, 0.5 + 0.4j):
                f = fm.power_function(0, alpha)
                da = abr_derivative(ABRequest(f, 0, 1, nu, tol=1e-10))
                dc = abc_derivative(ABRequest(f, 0, 1, nu, tol=1e-10))
                assert abs(da.value - dc.value) < 1e-8, (alpha, nu)

    def test_power_closed_form(self):
        for alpha in (0.5, 1.0, 2.0):
            for nu in (0.3, 0.5, 0.7, 0.5 + 0.4j):
                for h in (0.5, 1.0, 2.0):
                    f = fm.power_function(0, alpha)
                    got = abr_derivative(ABRequest(f, 0, h, nu, tol=1e-10))
                    want = ab_derivative_power_closed(alpha, nu, h)
                    rel = abs(got.value - want) / abs(want)
                    assert rel < 1e-8, (alpha, nu, h)

    def test_removable_singularity_at_one(self):
        got = abr_derivative(ABRequest(fm.power_function(0, 2.0), 0, 3, 1.0))
        assert got.value == pytest.approx(6.0)
        got = abc_derivative(ABRequest(fm.exponential(1.0), 0, 0.5, 1.0))
        assert got.value == pytest.approx(cmath.exp(0.5))

    def test_rejects_negative_real_order(self):
        with pytest.raises(DomainNotSupported):
            abr_derivative(ABRequest(fm.constant(1.0), 0, 1, -0.5))

    def test_hankel_requires_nonreal(self):
        with pytest.raises(DomainNotSupported):
            abr_derivative(ABRequest(fm.exponential(1.0), 0, 1, 0.5,
                                     formulation="hankel"))

    def test_negative_real_part_diverges(self):
        with pytest.raises((NotConverged, DomainNotSupported)):
            abr_derivative(ABRequest(fm.exponential(1.0), 0, 1, -0.3 + 0.6j,
                                     tol=1e-6))

    def test_near_one_cancellation_guarded(self):
        with pytest.raises(DomainNotSupported):
            abr_derivative(ABRequest(fm.exponential(1.0), 0, 1.0,
                                     1.0 + 0.01 + 0.01j, tol=1e-8))


class TestCrossFormulation:
    FUNCS = ["pow(z-0,1.5)", "exp(z)", "pow(z-0,2) + exp(z)"]

    @pytest.mark.parametrize("src", FUNCS)
    @pytest.mark.parametrize("nu", [0.3, 0.7])
    def test_real_orders_all_three(self, src, nu):
        f = fm.parse(src)
        vals = {}
        for form in ("series", "kernel"):
            req = ABRequest(f, 0, 1, nu, tol=1e-9, formulation=form)
            vals[form] = abr_derivative(req).value
        assert abs(vals["series"] - vals["kernel"]) < 1e-6 * max(
            1.0, abs(vals["series"]))
        vals_c = {}
        for form in ("series", "kernel"):
            req = ABRequest(f, 0, 1, nu, tol=1e-9, formulation=form)
            vals_c[form] = abc_derivative(req).value
        assert abs(vals_c["series"] - vals_c["kernel"]) < 1e-6 * max(
            1.0, abs(vals_c["series"]))

    @pytest.mark.parametrize("src", FUNCS)
    @pytest.mark.parametrize("nu", [0.5 + 0.4j, 0.5 - 0.4j])
    def test_complex_orders_series_vs_hankel(self, src, nu):
        f = fm.parse(src)
        for op in (abr_derivative, abc_derivative):
            a = op(ABRequest(f, 0, 1, nu, tol=1e-9, formulation="series"))
            b = op(ABRequest(f, 0, 1, nu, tol=1e-9, formulation="hankel"))
            assert abs(a.value - b.value) < 1e-5 * max(1.0, abs(a.value))

    def test_continuation_overlap_near_real_axis(self):
        # series and contour routes agree just off the real axis
        f = fm.exponential(1.0)
        nu = 0.5 + 0.01j
        a = abr_derivative(ABRequest(f, 0, 1, nu, tol=1e-9,
                                     formulation="series"))
        b = abr_derivative(ABRequest(f, 0, 1, nu, tol=1e-9,
                                     formulation="hankel"))
        assert abs(a.value - b.value) < 1e-5


class TestExponentialGolden:
    def test_abr_closed_form(self):
        for a in (1.0, 2.0, 1.5 + 0.5j):
            for nu in (0.3, 0.5, 0.5 + 0.4j):
                ratio = abs(nu / (1 - nu) * a ** -complex(nu))
                if ratio > 0.9:
                    continue
                for z in (0.0, 0.5, 1.0):
                    want = cmath.exp(a * z) / (
                        1 - nu + nu * cmath.exp(-nu * cmath.log(a)))
                    got = abr_derivative_exp(a, nu, z)
                    assert abs(got.value - want) < 1e-8 * abs(want), (a, nu, z)
                    gotc = abc_derivative_exp(a, nu, z)
                    assert abs(gotc.value - want) < 1e-8 * abs(want)

    def test_geometric_guard(self):
        # |(-nu/(1-nu)) a^-nu| >= 1 must be refused, not mis-summed
        with pytest.raises(DomainNotSupported):
            abr_derivative_exp(0.05, 0.9, 0.0)

    def test_ab_normalization_multiplier(self):
        a, nu, z = 2.0, 0.4, 0.2
        b = B_ABNORM(nu)
        got = abr_derivative_exp(a, nu, z, B=B_ABNORM)
        want = b * cmath.exp(a * z) / (1 - nu + nu * a ** -nu)
        assert abs(got.value - want) < 1e-10 * abs(want)


class TestInversionAndCommutativity:
    def test_abr_inverts_ab_integral(self):
        f = fm.power_function(0, 1.0)
        inner = ab_integral_on_grid(f, 0, 1, 0.5, tol=1e-9, grid_tol=1e-9)
        out = abr_derivative(ABRequest(inner, 0, 1, 0.5, tol=1e-8,
                                       formulation="series"))
        assert abs(out.value - f(1.0)) < 1e-6

    def test_ab_integral_inverts_abr(self):
        f = fm.parse("exp(z)")
        inner = abr_on_grid(f, 0, 1, 0.6, tol=1e-9, grid_tol=1e-9)
        out = ab_integral(ABRequest(inner, 0, 1, 0.6, tol=1e-8))
        assert abs(out.value - f(1.0)) < 1e-6

    def test_ab_integral_of_abc_shifts_by_f_at_c(self):
        f = fm.parse("exp(z)")
        inner = abc_on_grid(f, 0, 1, 0.6, tol=1e-9, grid_tol=1e-9)
        out = ab_integral(ABRequest(inner, 0, 1, 0.6, tol=1e-8))
        assert abs(out.value - (f(1.0) - f(0.0))) < 1e-6

    def test_ab_integrals_commute(self):
        f = fm.power_function(0, 1.0)
        mu, nu = 0.3, 0.6
        lhs_inner = ab_integral_on_grid(f, 0, 1, nu, tol=1e-9)
        lhs = ab_integral(ABRequest(lhs_inner, 0, 1, mu, tol=1e-8))
        rhs_inner = ab_integral_on_grid(f, 0, 1, mu, tol=1e-9)
        rhs = ab_integral(ABRequest(rhs_inner, 0, 1, nu, tol=1e-8))
        assert abs(lhs.value - rhs.value) < 1e-6

    def test_non_semigroup_witness_gap(self):
        # AB_I^0.5 twice differs from AB_I^1 by a pinned gap > 0.01
        f = fm.power_function(0, 1.0)
        inner = ab_integral_on_grid(f, 0, 1, 0.5, tol=1e-9)
        twice = ab_integral(ABRequest(inner, 0, 1, 0.5, tol=1e-9))
        once = ab_integral(ABRequest(f, 0, 1, 1.0, tol=1e-9))
        gap = abs(twice.value - once.value)
        assert gap > 0.01
        assert abs(gap - ov.AB_SEMIGROUP_GAP.real) < 1e-6

    def test_negated_order_is_not_abr(self):
        # AB_I^(-nu) and ABR^nu are structurally different operators
        f = fm.power_function(0, 1.0)
        neg = ab_integral(ABRequest(f, 0, 1, -0.5, tol=1e-9))
        der = abr_derivative(ABRequest(f, 0, 1, 0.5, tol=1e-9))
        gap = abs(neg.value - der.value)
        assert gap > 0.01
        assert abs(gap - ov.AB_NEGORDER_VS_ABR_GAP.real) < 1e-6


class TestMultiplier:
    def test_kinds(self):
        assert B_ONE.kind == "constant_one"
        assert B_ABNORM.kind == "ab_normalization"
        assert B_ONE(0.37) == 1.0

    def test_ab_normalization_values(self):
        # B(nu) = 1 - nu + nu/Gamma(nu); B(1) = 1
        assert B_ABNORM(1.0) == pytest.approx(1.0)
        nu = 0.5
        want = 1 - nu + nu / complex_gamma(nu)
        assert B_ABNORM(nu) == pytest.approx(want)

    def test_zero_multiplier_rejected(self):
        dead = MultiplierFunction.from_callable(lambda nu: 0.0)
        with pytest.raises(MultiplierZero):
            ab_integral(ABRequest(fm.constant(1.0), 0, 1, 0.5, B=dead))
