import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcalc import funcmodel as fm
from abcalc.errors import EvalDomainError
from abcalc.funcmodel import (
    Add, Const, Cos, Div, Exp, Mul, ParseError, Pow, Sin, Sub, Var,
    parse, power_function, exponential,
)


class TestParse:
    def test_power_node(self):
        f = parse("pow(z-0, 1.5)")
        assert f.root == Pow(Sub(Var(), Const(0j)), complex(1.5))

    def test_exp_plus_constant(self):
        f = parse("exp(2*z) + 3")
        assert f.root == Add(Exp(Mul(Const(2 + 0j), Var())), Const(3 + 0j))

    def test_unclosed_call_position(self):
        with pytest.raises(ParseError) as exc:
            parse("pow(z-1,")
        assert exc.value.position == 8

    def test_unknown_identifier(self):
        with pytest.raises(ParseError):
            parse("tan(z)")

    def test_paren_complex_literal(self):
        assert parse("(1.5-2i)").root == Const(1.5 - 2j)
        assert parse("(0.5+0.4i)").root == Const(0.5 + 0.4j)

    def test_imaginary_literal(self):
        assert parse("2.5i").root == Const(2.5j)

    def test_integer_caret_power(self):
        assert parse("z^3").root == Pow(Var(), 3 + 0j)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("z + 1 )")

    def test_whitespace_insensitive(self):
        assert parse(" pow( z - 1 , 0.5 ) ") == parse("pow(z-1,0.5)")


class TestEval:
    def test_square(self):
        assert parse("pow(z-0,2)")(3.0) == 9.0

    def test_euler_identity(self):
        assert abs(parse("exp(1*z)")(1j * math.pi) + 1.0) < 1e-15

    def test_principal_square_root(self):
        assert parse("pow(z-0,0.5)")(-1.0) == pytest.approx(1j)

    def test_division_by_zero(self):
        with pytest.raises(EvalDomainError):
            parse("1/z")(0.0)

    def test_zero_to_nonpositive_power(self):
        with pytest.raises(EvalDomainError):
            parse("pow(z-0,-0.5)")(0.0)

    def test_vectorized(self):
        f = parse("pow(z-0,2) + exp(z)")
        zs = np.array([0.5, 1.0 + 0.2j, -0.3])
        got = f(zs)
        expected = zs.astype(complex) ** 2 + np.exp(zs.astype(complex))
        np.testing.assert_allclose(got, expected, rtol=1e-15)

    def test_trig(self):
        f = parse("sin(z)*sin(z) + cos(z)*cos(z)")
        assert f(0.7 + 0.3j) == pytest.approx(1.0)


class TestDerivative:
    def test_power_rule(self):
        d = power_function(0.5, 2.5).derivative()
        z = 1.7 + 0.4j
        expected = 2.5 * (z - 0.5) ** 1.5
        assert d(z) == pytest.approx(expected)

    def test_exponential_rule(self):
        d = exponential(3.0).derivative()
        assert d(0.2) == pytest.approx(3.0 * cmath.exp(0.6))

    def finite_difference(self, f, z, h=1e-6):
        step = h * max(1.0, abs(z))
        return (f(z + step) - f(z - step)) / (2 * step)

    @pytest.mark.parametrize("src", [
        "pow(z-0,3)+exp(z)",
        "pow(z-1,2.5)*sin(z)",
        "exp(2*z)/(z+3)",
        "cos(z) - z*sin(z)",
        "pow(exp(z) + 1, 2)",
    ])
    def test_against_finite_differences(self, src):
        f = parse(src)
        d = f.derivative()
        rng = np.random.default_rng(42)
        for _ in range(20):
            z = complex(rng.uniform(1.2, 2.5), rng.uniform(0.1, 1.0))
            fd = self.finite_difference(f, z)
            assert abs(d(z) - fd) <= 1e-6 * max(1.0, abs(fd)), (src, z)


def _leaf():
    finite = st.floats(min_value=-4.0, max_value=4.0).map(lambda x: round(x, 3))
    const = st.tuples(finite, finite).map(lambda p: Const(complex(*p)))
    return st.one_of(const, st.just(Var()))


def _ast(depth=5):
    def extend(children):
        both_const_ok = st.tuples(children, children).filter(
            lambda ab: not (isinstance(ab[0], Const) and isinstance(ab[1], Const)))
        safe_exponent = st.integers(min_value=-3, max_value=5).map(
            lambda n: complex(n)) | st.floats(
                min_value=-2.0, max_value=2.5).map(lambda x: complex(round(x, 2)))
        return st.one_of(
            both_const_ok.map(lambda ab: Add(*ab)),
            both_const_ok.map(lambda ab: Sub(*ab)),
            st.tuples(children, children).map(lambda ab: Mul(*ab)),
            st.tuples(children, children).map(lambda ab: Div(*ab)),
            st.tuples(children, safe_exponent).map(lambda be: Pow(*be)),
            children.map(Exp), children.map(Sin), children.map(Cos),
        )
    return st.recursive(_leaf(), extend, max_leaves=2 ** depth)


class TestRoundTrip:
    @settings(max_examples=200, deadline=None)
    @given(_ast())
    def test_parse_pretty_print_roundtrip(self, node):
        f = fm.FunctionExpr(node)
        assert parse(f.pretty()) == f

    def test_examples(self):
        for src in ["pow(z-0, 1.5)", "(1+2i)*z - exp(3*z)", "z^2/(z - 0.5)"]:
            f = parse(src)
            assert parse(f.pretty()) == f
