"""Tests for exact polynomial arithmetic."""
from fractions import Fraction

import pytest

from critval.core.exceptions import (
    BoundContainsVariableError,
    BudgetExceededError,
    ExactDivisionFailedError,
    UnboundVariableError,
)
from critval.models.polynomial import (
    BIGZ_VAR,
    W_VAR,
    Polynomial,
    RationalFunction,
    factorial,
    parse_variable,
    rf_equal,
    term_budget,
    x_var,
    y_var,
    z_var,
)


def test_add_cancels(x1):
    assert (x1 + 1) + (x1 - 1) == x1.scale(2)


def test_add_zero_identity(x1, z1):
    p = x1 * z1 + 3
    assert p + Polynomial.zero() == p


def test_additive_inverse(z1, z2):
    assert ((z1 - z2) + (z2 - z1)).is_zero


def test_binomial_square_text(x1, z1):
    assert str((x1 - z1) * (x1 - z1)) == "x1^2 - 2*x1*z1 + z1^2"


def test_mul_identity_and_annihilation(x1, x2):
    p = x2 - x1
    assert p * 1 == p
    assert (p * 0).is_zero


def test_degree_additivity(x1, z1, z2):
    p, q = x1 ** 2 + z1, x1 * z2 - 1
    assert (p * q).degree() == p.degree() + q.degree()


def test_pow_empty_product(x1, z1):
    assert (x1 - z1) ** 0 == 1
    assert Polynomial.zero() ** 0 == 1
    assert (Polynomial.zero() ** 3).is_zero


def test_pow_rejects_negative_exponent(x1):
    with pytest.raises(ValueError):
        x1 ** -1


def test_derivative_examples(x1, z1):
    assert (x1 ** 3 * z1).derivative(x_var(1)) == (x1 ** 2 * z1).scale(3)
    assert (x1 ** 2).derivative(z_var(1)).is_zero
    assert ((x1 - z1) ** 2).derivative(x_var(1)) == x1.scale(2) - z1.scale(2)


def test_antiderivative_examples(x1, z2):
    assert str((x1 ** 2).antiderivative(x_var(1))) == "1/3*x1^3"
    assert z2.antiderivative(x_var(1)) == z2 * x1
    assert Polynomial.zero().antiderivative(x_var(1)).is_zero


def test_substitute_examples(x1, z1, z2):
    y1 = Polynomial.var(y_var(1))
    assert (x1 - z1).substitute(x_var(1), z1).is_zero
    assert (x1 ** 2).substitute(x_var(1), y1 + z1) == y1 ** 2 + (y1 * z1).scale(2) + z1 ** 2
    assert z2.substitute(x_var(1), x1 ** 5) == z2


def test_compose_is_simultaneous(z1, z2):
    z3 = Polynomial.var(z_var(3))
    p = z1 * z2
    swapped = p.compose({z_var(1): z2 - z1, z_var(2): z3 - z1})
    assert swapped == (z2 - z1) * (z3 - z1)


def test_base_case_integral(x1, z1):
    assert str((x1 - z1).definite_integral(x_var(1), 0, z1)) == "-1/2*z1^2"


@pytest.mark.parametrize("a", range(5))
def test_base_case_integral_powers(a, x1, z1):
    expected = (z1 ** (a + 1)).scale(Fraction((-1) ** a, a + 1))
    assert ((x1 - z1) ** a).definite_integral(x_var(1), 0, z1) == expected


def test_integral_between_variables(z1, z2):
    assert Polynomial.one().definite_integral(y_var(1), z1, z2) == z2 - z1


def test_bound_containing_variable_raises(x1):
    with pytest.raises(BoundContainsVariableError):
        x1.definite_integral(x_var(1), 0, x1 + 1)


def test_evaluate_examples(x1, z1):
    assert (x1 ** 2 - z1).evaluate({x_var(1): 2, z_var(1): 3}) == 1
    assert Polynomial.zero().evaluate({}) == 0
    assert x1.scale(Fraction(1, 2)).evaluate({x_var(1): Fraction(1, 3)}) == Fraction(1, 6)


def test_evaluate_lists_missing_variables(x1, z1, z2):
    with pytest.raises(UnboundVariableError) as info:
        (x1 * z1 + z2).evaluate({x_var(1): 1})
    assert info.value.missing == ["z1", "z2"]
    assert "z1, z2" in str(info.value)


def test_factorial():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert factorial(20) == 2432902008176640000


def test_coefficients_stay_reduced(x1):
    p = x1.scale(Fraction(2, 4)) + x1.scale(Fraction(1, 2))
    assert p == x1
    assert type(p.coefficient(((x_var(1), 1),))) is Fraction
    assert type(p.terms[((x_var(1), 1),)]) is int


def test_canonical_order_across_families():
    p = Polynomial.parse("Z + w + y1 + z1 + x1")
    assert str(p) == "x1 + z1 + y1 + w + Z"


def test_parse_accepts_free_order_and_whitespace(x1, z1):
    assert Polynomial.parse("  z1^2 + x1^2 -2 * x1*z1 ") == (x1 - z1) ** 2
    assert Polynomial.parse("-1/2*z1^2") == (z1 ** 2).scale(Fraction(-1, 2))
    assert Polynomial.parse("0").is_zero


@pytest.mark.parametrize("text", ["", "x1 +", "x1 ** 2", "3/0*x1", "q1"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        Polynomial.parse(text)


def test_parse_variable_names():
    assert parse_variable("x3") == x_var(3)
    assert parse_variable("w") == W_VAR
    assert parse_variable("Z") == BIGZ_VAR


def test_exact_divide(x1, z1):
    assert (x1 ** 2 - z1 ** 2).exact_divide(x1 - z1) == x1 + z1
    with pytest.raises(ExactDivisionFailedError):
        (x1 ** 2 + 1).exact_divide(x1)


def test_rf_equal_cross_multiplies(x1, z1):
    f = RationalFunction(x1, z1)
    g = RationalFunction(x1.scale(2), z1.scale(2))
    assert rf_equal(f, g)
    assert f == g
    assert not rf_equal(f, RationalFunction(z1, x1))


def test_rational_function_zero_denominator(x1):
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x1, 0)


def test_term_budget_caps_products(x1, x2, z1):
    with term_budget(3):
        with pytest.raises(BudgetExceededError) as info:
            (x1 + x2 + z1) ** 2
    assert info.value.limit == 3
    assert ((x1 + x2 + z1) ** 2).terms


@pytest.mark.parametrize("build", [
    lambda: Polynomial.constant(0.1),
    lambda: Polynomial.from_terms([(0.5, {x_var(1): 1})]),
    lambda: Polynomial({((x_var(1), 1),): 0.25}),
    lambda: Polynomial.var(x_var(1)).scale(1.5),
])
def test_float_coefficients_rejected(build):
    with pytest.raises(TypeError):
        build()
