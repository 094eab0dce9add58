"""Tests for polynomials with prescribed critical points and their Jacobian."""
import itertools
from fractions import Fraction

import pytest

from critval.core.exceptions import InvalidInstanceError, TheoremBRequiresPositiveMultiplicityError
from critval.models.critical import CriticalSpec
from critval.models.polynomial import BIGZ_VAR, Polynomial, z_var
from critval.schemas.instance import CheckMode, CheckName, CheckStatus
from critval.services.critpoly import (
    build_p,
    critical_values,
    jacobian_at,
    jacobian_direct,
    jacobian_rewrite,
    p_derivative,
    theorem_b_degree,
    theorem_b_rhs,
    verify_jacobian_paths,
    verify_theorem_b,
)
from critval.services.linalg import det_cofactor


def test_build_p_single_point(z1):
    big_z = Polynomial.var(BIGZ_VAR)
    p = build_p(CriticalSpec.symbolic((1,)))
    assert p == (big_z ** 2).scale(Fraction(1, 2)) - z1 * big_z
    assert p.substitute(BIGZ_VAR, 0).is_zero


def test_p_derivative_vanishes_at_critical_points():
    spec = CriticalSpec.symbolic((2, 1))
    dp = build_p(spec).derivative(BIGZ_VAR)
    assert dp == p_derivative(spec)
    for i in (1, 2):
        assert dp.substitute(BIGZ_VAR, Polynomial.var(z_var(i))).is_zero


def test_critical_values_rational():
    assert critical_values(CriticalSpec.rational((1,), (2,))) == [Fraction(-2)]
    values = critical_values(CriticalSpec.rational((1, 1), (1, 2)))
    assert all(isinstance(v, Fraction) for v in values)


def test_critical_values_symbolic(z1):
    assert critical_values(CriticalSpec.symbolic((1,))) == [(z1 ** 2).scale(Fraction(-1, 2))]


def test_jacobian_single_point(z1):
    spec = CriticalSpec.symbolic((1,))
    assert jacobian_direct(spec)[0, 0] == -z1


def test_two_point_determinant(z1, z2):
    det = det_cofactor(jacobian_direct(CriticalSpec.symbolic((1, 1))))
    assert det == (z1 * z2 * (z1 - z2) ** 2).scale(Fraction(-1, 2))
    assert det == theorem_b_rhs(2, (1, 1))


def test_rewrite_agrees_with_direct():
    spec = CriticalSpec.symbolic((2, 1, 1))
    assert jacobian_direct(spec) == jacobian_rewrite(spec)


@pytest.mark.parametrize("a", [(1,), (3,), (1, 1), (2, 1), (1, 2, 1)])
def test_verify_theorem_b(a):
    outcome = verify_theorem_b(len(a), a)
    assert outcome.status == CheckStatus.PASS
    assert outcome.name == CheckName.THEOREM_B


def test_verify_theorem_b_evaluate_mode():
    outcome = verify_theorem_b(3, (2, 1, 2), CheckMode.evaluate(points=3, seed=8))
    assert outcome.status == CheckStatus.PASS
    assert outcome.points_used == 3


@pytest.mark.parametrize("a", [(1, 1), (1, 2, 1)])
def test_verify_jacobian_paths(a):
    outcome = verify_jacobian_paths(len(a), a)
    assert outcome.status == CheckStatus.PASS
    assert outcome.name == CheckName.JACOBIAN_PATHS


@pytest.mark.parametrize("a", [(1, 1), (2, 3), (1, 1, 2)])
def test_determinant_is_homogeneous(a):
    det = det_cofactor(jacobian_direct(CriticalSpec.symbolic(a)))
    assert det.monomial_degrees() == {theorem_b_degree(a)}


def test_jacobian_at_rational_points():
    spec = CriticalSpec.rational((1, 1), (1, 2))
    matrix, det = jacobian_at(spec)
    assert det == Fraction(-1)
    assert det == theorem_b_rhs(2, (1, 1)).evaluate(spec.assignment())
    assert matrix.n == 2


def test_jacobian_at_needs_points():
    with pytest.raises(InvalidInstanceError):
        jacobian_at(CriticalSpec.symbolic((1, 1)))
    with pytest.raises(InvalidInstanceError):
        jacobian_direct(CriticalSpec.rational((1,), (3,)))


@pytest.mark.parametrize("a", [(0,), (1, 0), (2, 0, 1)])
def test_zero_multiplicity_rejected(a):
    with pytest.raises(TheoremBRequiresPositiveMultiplicityError):
        CriticalSpec.symbolic(a)
    with pytest.raises(TheoremBRequiresPositiveMultiplicityError):
        verify_theorem_b(len(a), a)


def test_spec_validation():
    with pytest.raises(InvalidInstanceError):
        CriticalSpec.symbolic(())
    with pytest.raises(InvalidInstanceError):
        CriticalSpec.rational((1, 1), (2, 2))
    with pytest.raises(InvalidInstanceError):
        CriticalSpec.rational((1, 1), (2,))


def test_theorem_b_rhs_length_mismatch():
    with pytest.raises(InvalidInstanceError):
        theorem_b_rhs(3, (1, 1))


_POSITIVE_GRID = [a for n in (1, 2, 3) for a in itertools.product(range(1, 4), repeat=n)]


@pytest.mark.slow
@pytest.mark.parametrize("a", _POSITIVE_GRID)
def test_verify_theorem_b_full_grid(a):
    assert verify_theorem_b(len(a), a).status == CheckStatus.PASS


@pytest.mark.slow
@pytest.mark.parametrize("a", _POSITIVE_GRID)
def test_jacobian_paths_full_grid(a):
    assert verify_jacobian_paths(len(a), a).status == CheckStatus.PASS
