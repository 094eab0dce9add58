"""Tests for the alternating-sign identities and their calibration."""
import itertools

import pytest

from conftest import load_golden
from critval.core.exceptions import InvalidInstanceError, NoConsistentRuleError
from critval.models.polynomial import Polynomial, y_var
from critval.schemas.calibration import CalibratedIdentity, SignRule
from critval.schemas.instance import CheckMode, CheckStatus
from critval.services import signs
from critval.services.signs import (
    CALIBRATED_RULES,
    calibrate_sign_rule,
    differential_identity_sides,
    monomial_basis,
    permutation_sign,
    region_identity_check,
    region_integrand,
    verify_differential,
)


@pytest.mark.parametrize("identity", list(CalibratedIdentity))
def test_calibration_matches_golden(identity):
    golden = load_golden("sign_calibration.json")[identity.value]
    result = calibrate_sign_rule(identity, golden["n_values"])
    table = {
        rule.value: {str(n): passed for n, passed in row.items()}
        for rule, row in result.table.items()
    }
    assert table == golden["table"]
    assert result.rule.value == golden["rule"]
    assert CALIBRATED_RULES[identity] == result.rule


def test_calibration_per_n_lists_every_passing_rule():
    result = calibrate_sign_rule(CalibratedIdentity.DIFFERENTIAL, (1, 2))
    assert set(result.per_n[1]) == {SignRule.I_PLUS_ONE, SignRule.N_MINUS_I}
    assert set(result.per_n[2]) == {SignRule.I, SignRule.N_MINUS_I}
    assert result.passing_rules() == [SignRule.N_MINUS_I]


def test_wrong_sign_fails_with_witness():
    outcome = verify_differential(1, (0,), SignRule.I)
    assert outcome.status == CheckStatus.FAIL
    assert outcome.witness == "2"


@pytest.mark.parametrize("a", [(0,), (2,), (1, 0), (0, 2), (1, 1, 0)])
def test_differential_identity(a):
    left, right = differential_identity_sides(len(a), a)
    assert left == right
    assert verify_differential(len(a), a).status == CheckStatus.PASS


def test_differential_evaluate_mode():
    outcome = verify_differential(3, (1, 0, 2), mode=CheckMode.evaluate(points=2, seed=1))
    assert outcome.status == CheckStatus.PASS


@pytest.mark.parametrize("a", [(0, 0), (1, 0), (0, 1, 1)])
def test_region_identity(a):
    assert region_identity_check(len(a), a).status == CheckStatus.PASS


def test_region_identity_evaluate_mode():
    outcome = region_identity_check(3, (1, 0, 1), mode=CheckMode.evaluate(points=2, seed=9))
    assert outcome.status == CheckStatus.PASS


def test_region_wrong_sign_fails():
    outcome = region_identity_check(2, (0, 0), sign_rule=SignRule.I)
    assert outcome.status == CheckStatus.FAIL
    assert outcome.witness.startswith("integrand 1: ")


def test_region_needs_two_variables():
    with pytest.raises(InvalidInstanceError):
        region_identity_check(1, (0,))


def test_region_integrand_is_antisymmetric():
    f = region_integrand(3, (1, 0, 2))
    y1, y2 = Polynomial.var(y_var(1)), Polynomial.var(y_var(2))
    swapped = f.compose({y_var(1): y2, y_var(2): y1})
    assert swapped == -f


def test_monomial_basis_size():
    # monomials of degree <= 2 in two variables
    assert len(monomial_basis(2, 2)) == 6
    assert monomial_basis(0, 3) == [Polynomial.one()]


@pytest.mark.parametrize("word,sign", [((1, 2, 3), 1), ((2, 1, 3), -1), ((3, 1, 2), 1), ((), 1)])
def test_permutation_sign(word, sign):
    assert permutation_sign(word) == sign


@pytest.mark.parametrize("text,rule", [
    ("i", SignRule.I),
    ("i+1", SignRule.I_PLUS_ONE),
    ("n - i", SignRule.N_MINUS_I),
    ("(-1)^(i+1)", SignRule.I_PLUS_ONE),
])
def test_sign_rule_flags(text, rule):
    assert SignRule.from_flag(text) == rule


def test_sign_rule_values():
    assert SignRule.I.sign(1, 3) == -1
    assert SignRule.I_PLUS_ONE.sign(1, 3) == 1
    assert SignRule.N_MINUS_I.sign(1, 3) == 1
    assert SignRule.N_MINUS_I.sign(2, 3) == -1


@pytest.mark.slow
@pytest.mark.parametrize("a", list(itertools.product(range(2), repeat=4)))
def test_differential_four_variables(a):
    assert verify_differential(4, a).status == CheckStatus.PASS


@pytest.mark.slow
@pytest.mark.parametrize("a", [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
def test_region_four_variables(a):
    assert region_identity_check(4, a).status == CheckStatus.PASS


def test_no_rule_passing_every_n_raises(monkeypatch):
    # each candidate passes at odd n only, so none passes the whole range
    monkeypatch.setattr(signs, "_differential_passes", lambda n, rule: n % 2 == 1)
    with pytest.raises(NoConsistentRuleError) as info:
        calibrate_sign_rule(CalibratedIdentity.DIFFERENTIAL, (1, 2))
    assert info.value.table[SignRule.I] == {1: True, 2: False}
