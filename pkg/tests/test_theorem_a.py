"""Tests for the multi-integral closed form."""
import itertools
import time
from fractions import Fraction

import pytest
import sympy

from conftest import load_golden
from critval.core.exceptions import InvalidInstanceError
from critval.models.polynomial import Polynomial, x_var, z_var
from critval.schemas.instance import CheckMode, CheckStatus, IdentityInstance
from critval.services.theorem_a import (
    integrand,
    moment_matrix,
    theorem_a_constant,
    theorem_a_lhs,
    theorem_a_lhs_det,
    theorem_a_rhs,
    total_degree,
    verify_theorem_a,
)


@pytest.mark.parametrize("a", range(7))
def test_base_case_matches_golden(a):
    expected = load_golden("base_case.json")[str(a)]
    inst = IdentityInstance(n=1, a=(a,))
    assert str(theorem_a_lhs(inst)) == expected
    assert str(theorem_a_rhs(inst)) == expected


def test_two_variable_text():
    inst = IdentityInstance(n=2, a=(0, 0))
    assert str(theorem_a_rhs(inst)) == "-1/2*z1^2*z2 + 1/2*z1*z2^2"
    assert theorem_a_lhs(inst) == theorem_a_rhs(inst)


def test_constant_sign_follows_odd_positions():
    assert theorem_a_constant(IdentityInstance(a=(1, 1))) < 0
    assert theorem_a_constant(IdentityInstance(a=(0, 1))) > 0
    assert theorem_a_constant(IdentityInstance(a=(1, 0, 1))) > 0


def test_all_integration_orders_agree():
    inst = IdentityInstance(n=3, a=(0, 1, 0))
    results = {str(theorem_a_lhs(inst, order=order)) for order in itertools.permutations((1, 2, 3))}
    assert len(results) == 1
    assert theorem_a_lhs(inst) == theorem_a_rhs(inst)


@pytest.mark.parametrize("order", [(1, 1), (1, 2, 3), (0, 1)])
def test_invalid_order_rejected(order):
    with pytest.raises(InvalidInstanceError):
        theorem_a_lhs(IdentityInstance(n=2, a=(0, 0)), order=order)


@pytest.mark.parametrize("a,b", [((1,), 2), ((0, 2), 0), ((1, 0, 1), 1)])
def test_sides_are_homogeneous(a, b):
    inst = IdentityInstance(a=a, b=b)
    assert theorem_a_rhs(inst).monomial_degrees() == {total_degree(inst)}
    assert theorem_a_lhs(inst).monomial_degrees() == {total_degree(inst)}


def test_integrand_vanishes_on_diagonal():
    inst = IdentityInstance(n=2, a=(1, 0))
    x1, x2 = Polynomial.var(x_var(1)), Polynomial.var(x_var(2))
    assert integrand(inst).substitute(x_var(2), x1).is_zero
    assert not integrand(inst).substitute(x_var(2), x2 + 1).is_zero


def test_lhs_matches_sympy_integration():
    inst = IdentityInstance(n=2, a=(1, 0), b=1)
    x1, x2, z1, z2 = sympy.symbols("x1 x2 z1 z2")
    f = sympy.sympify(str(integrand(inst)).replace("^", "**"))
    expected = sympy.integrate(sympy.integrate(f, (x2, 0, z2)), (x1, 0, z1))
    ours = sympy.sympify(str(theorem_a_lhs(inst)).replace("^", "**"))
    assert sympy.expand(ours - expected) == 0


_SMALL = [
    (a, b)
    for n in (1, 2)
    for a in itertools.product(range(2), repeat=n)
    for b in range(2)
]


@pytest.mark.parametrize("a,b", _SMALL)
def test_verify_small_grid(a, b):
    assert verify_theorem_a(IdentityInstance(a=a, b=b)).status == CheckStatus.PASS


@pytest.mark.slow
@pytest.mark.parametrize("a,b", [
    (a, b)
    for n in (1, 2, 3)
    for a in itertools.product(range(3), repeat=n)
    for b in range(3)
])
def test_verify_full_grid(a, b):
    assert verify_theorem_a(IdentityInstance(a=a, b=b)).status == CheckStatus.PASS


def test_verify_evaluate_mode():
    inst = IdentityInstance(a=(1, 2, 0), b=1)
    outcome = verify_theorem_a(inst, CheckMode.evaluate(points=4, seed=11))
    assert outcome.status == CheckStatus.PASS
    assert outcome.points_used == 4


def test_evaluate_mode_is_reproducible():
    inst = IdentityInstance(a=(2, 1))
    mode = CheckMode.evaluate(points=2, seed=3)
    first, second = verify_theorem_a(inst, mode), verify_theorem_a(inst, mode)
    assert first.model_dump(exclude={"elapsed_ms"}) == second.model_dump(exclude={"elapsed_ms"})


def test_rhs_at_point_matches_evaluation():
    inst = IdentityInstance(a=(1, 1))
    point = {z_var(1): 2, z_var(2): -3}
    assert theorem_a_rhs(inst, at=point).constant_term() == theorem_a_rhs(inst).evaluate(point)


def test_budget_exhaustion_skips():
    outcome = verify_theorem_a(IdentityInstance(a=(2, 2, 2), b=2), budget=5)
    assert outcome.status == CheckStatus.SKIPPED
    assert outcome.witness is None
    assert "5" in outcome.reason


@pytest.mark.parametrize("a,b", [((2,), 1), ((1, 0), 1), ((0, 1, 0), 0), ((1, 1, 0), 1)])
def test_moment_determinant_matches_iterated_integral(a, b):
    inst = IdentityInstance(a=a, b=b)
    assert theorem_a_lhs_det(inst) == theorem_a_lhs(inst)


def test_moment_determinant_at_point():
    inst = IdentityInstance(a=(1, 0, 1, 1), b=1)
    point = {z_var(1): Fraction(1, 2), z_var(2): -3, z_var(3): 2, z_var(4): Fraction(5, 3)}
    matrix = moment_matrix(inst, at=point)
    assert all(p.is_constant for row in matrix.entries for p in row)
    assert theorem_a_lhs_det(inst, at=point).constant_term() == theorem_a_rhs(inst).evaluate(point)


@pytest.mark.slow
@pytest.mark.parametrize("a,b", [
    (a, b) for a in itertools.product(range(2), repeat=4) for b in range(2)
])
def test_verify_four_variables_symbolic(a, b):
    assert verify_theorem_a(IdentityInstance(a=a, b=b)).status == CheckStatus.PASS


@pytest.mark.slow
def test_five_variables_at_twenty_points_within_five_minutes():
    start = time.perf_counter()
    for a in itertools.product(range(2), repeat=5):
        outcome = verify_theorem_a(IdentityInstance(a=a), CheckMode.evaluate(points=20, seed=1))
        assert outcome.status == CheckStatus.PASS, outcome.witness
    assert time.perf_counter() - start < 300
