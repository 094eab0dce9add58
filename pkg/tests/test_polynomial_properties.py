"""Property suites for polynomial arithmetic, checked on canonical forms."""
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import VARIABLES, nonzero_polynomials, points, polynomials
from critval.models.polynomial import Polynomial, RationalFunction, rf_equal, y_var

PROPERTY = settings(max_examples=150, deadline=None)


@PROPERTY
@given(polynomials, polynomials)
def test_canonical_uniqueness(p, q):
    assert (p.terms == q.terms) == (p - q).is_zero


@PROPERTY
@given(polynomials, polynomials, polynomials)
def test_add_associative_commutative(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p


@PROPERTY
@given(polynomials, polynomials, polynomials)
def test_mul_associative_commutative(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p


@PROPERTY
@given(polynomials, polynomials, polynomials)
def test_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


@PROPERTY
@given(polynomials, polynomials, st.sampled_from(VARIABLES))
def test_product_rule(p, q, v):
    assert (p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v)


@PROPERTY
@given(polynomials, st.sampled_from(VARIABLES))
def test_derivative_undoes_antiderivative(p, v):
    assert p.antiderivative(v).derivative(v) == p


@PROPERTY
@given(polynomials, polynomials, polynomials, points)
def test_evaluation_homomorphism(p, q, r, point):
    assert (p * q + r).evaluate(point) == p.evaluate(point) * q.evaluate(point) + r.evaluate(point)


@PROPERTY
@given(polynomials, st.sampled_from(VARIABLES))
def test_integral_additivity(p, v):
    lo, mid, hi = (Polynomial.var(y_var(k)) for k in (1, 2, 3))
    split = p.definite_integral(v, lo, mid) + p.definite_integral(v, mid, hi)
    assert split == p.definite_integral(v, lo, hi)


@PROPERTY
@given(polynomials)
def test_text_round_trip(p):
    assert Polynomial.parse(str(p)) == p


@settings(max_examples=60, deadline=None)
@given(polynomials)
def test_text_matches_sympy(p):
    """The printed form means the same polynomial to an independent algebra system."""
    expected = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c
        for v, e in m:
            term = term * sympy.Symbol(v.name) ** e
        expected += term
    printed = sympy.sympify(str(p).replace("^", "**"))
    assert sympy.expand(printed - expected) == 0


@PROPERTY
@given(polynomials, nonzero_polynomials, polynomials, nonzero_polynomials)
def test_rf_equal_reflexive_symmetric(p, q, r, s):
    f, g = RationalFunction(p, q), RationalFunction(r, s)
    assert rf_equal(f, f)
    assert rf_equal(f, g) == rf_equal(g, f)


@PROPERTY
@given(polynomials, nonzero_polynomials, nonzero_polynomials, nonzero_polynomials)
def test_rf_equal_transitive(p, q, s, t):
    # f = g and g = h by construction, with different representatives
    f = RationalFunction(p, q)
    g = RationalFunction(p * s, q * s)
    h = RationalFunction(p * s * t, q * s * t)
    assert rf_equal(f, g) and rf_equal(g, h)
    assert rf_equal(f, h)
