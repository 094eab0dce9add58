"""Alternating-sign identities: the differential identity, the region identities, calibration."""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from critval.core.exceptions import InvalidInstanceError, NoConsistentRuleError
from critval.models.polynomial import Polynomial, factorial, x_var, y_var, z_var
from critval.schemas.calibration import CalibratedIdentity, CalibrationResult, SignRule
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.checks import Sides, run_check
from critval.services.linalg import vandermonde_product
from critval.services.theorem_a import Point, z_poly

logger = logging.getLogger(__name__)

# Pinned from calibrate_sign_rule; tests/golden/sign_calibration.json holds the evidence.
CALIBRATED_RULES: Dict[CalibratedIdentity, SignRule] = {
    CalibratedIdentity.DIFFERENTIAL: SignRule.N_MINUS_I,
    CalibratedIdentity.REGION: SignRule.I_PLUS_ONE,
}

CALIBRATION_N = (1, 2, 3, 4)


def _instance(n: int, a: Sequence[int]) -> IdentityInstance:
    return IdentityInstance(n=n, a=tuple(a), b=0)


# Differential identity -----------------------------------------------------

def _f(a: Sequence[int], xv: Polynomial, at: Optional[Point]) -> Polynomial:
    """prod_k (x - z_k)^{a_k} for one x variable."""
    result = Polynomial.one()
    for k, ak in enumerate(a, start=1):
        result = result * (xv - z_poly(k, at)) ** ak
    return result


def differential_identity_sides(
    n: int,
    a: Sequence[int],
    sign_rule: Optional[SignRule] = None,
    at: Optional[Point] = None,
) -> Tuple[Polynomial, Polynomial]:
    """(n + sum a) F V  and  sum_i s(i) V(x without x_i) d/dx_i [prod_j (x_i - z_j) F].

    ``at`` may fix z-values only; the x variables stay symbolic.
    """
    inst = _instance(n, a)
    rule = sign_rule or CALIBRATED_RULES[CalibratedIdentity.DIFFERENTIAL]
    xs = [Polynomial.var(x_var(j)) for j in range(1, n + 1)]
    factors = [_f(inst.a, xj, at) for xj in xs]

    big_f = Polynomial.one()
    for factor in factors:
        big_f = big_f * factor
    left = (big_f * vandermonde_product([x_var(j) for j in range(1, n + 1)])).scale(n + inst.a_sum)

    right = Polynomial.zero()
    for i in range(1, n + 1):
        xi = xs[i - 1]
        g = Polynomial.one()
        for j in range(1, n + 1):
            g = g * (xi - z_poly(j, at))
        # the other factors of F are constant in x_i
        others = Polynomial.one()
        for j, factor in enumerate(factors, start=1):
            if j != i:
                others = others * factor
        derivative = (g * factors[i - 1]).derivative(x_var(i)) * others
        reduced_v = vandermonde_product([x_var(j) for j in range(1, n + 1) if j != i])
        term = reduced_v * derivative
        right = right + term if rule.sign(i, n) > 0 else right - term
    return left, right


def verify_differential(
    n: int,
    a: Sequence[int],
    sign_rule: Optional[SignRule] = None,
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    inst = _instance(n, a)

    def build(at):
        left, right = differential_identity_sides(n, inst.a, sign_rule, at)
        return [("", left, right)]

    variables = [z_var(k) for k in range(1, n + 1)] + [x_var(k) for k in range(1, n + 1)]
    return run_check(
        CheckName.DIFFERENTIAL,
        inst,
        mode,
        build,
        variables=variables,
        degree_hint=n * (inst.a_sum + 1) + n * (n - 1) // 2,
        budget=budget,
    )


# Region identities ---------------------------------------------------------

def permutation_sign(word: Sequence[int]) -> int:
    """Parity of ``word`` relative to its sorted order."""
    inversions = sum(
        1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j]
    )
    return -1 if inversions % 2 else 1


def box_integral(
    f: Polynomial,
    lowers: Sequence[Polynomial],
    uppers: Sequence[Polynomial],
) -> Polynomial:
    """Integrate y_m over [lowers[m-1], uppers[m-1]] first, down to y_1."""
    result = f
    for k in range(len(uppers), 0, -1):
        result = result.definite_integral(y_var(k), lowers[k - 1], uppers[k - 1])
    return result


def region_sum_left(f: Polynomial, n: int, rule: SignRule, at: Optional[Point] = None) -> Polynomial:
    """sum_i s(i) sum over bijections pi onto {1..n} minus {i} of sgn(pi) * box [0, z_pi]."""
    total = Polynomial.zero()
    zero = Polynomial.zero()
    for i in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != i]
        inner = Polynomial.zero()
        for word in itertools.permutations(others):
            value = box_integral(f, [zero] * len(word), [z_poly(k, at) for k in word])
            inner = inner + value if permutation_sign(word) > 0 else inner - value
        total = total + inner if rule.sign(i, n) > 0 else total - inner
    return total


def region_sum_right(f: Polynomial, n: int, at: Optional[Point] = None) -> Polynomial:
    """sum over bijections pi onto {2..n} of sgn(pi) * box [z_1, z_pi]."""
    total = Polynomial.zero()
    z1 = z_poly(1, at)
    for word in itertools.permutations(range(2, n + 1)):
        value = box_integral(f, [z1] * len(word), [z_poly(k, at) for k in word])
        total = total + value if permutation_sign(word) > 0 else total - value
    return total


def shifted_box_left(f: Polynomial, n: int, rule: SignRule, at: Optional[Point] = None) -> Polynomial:
    """sum_i s(i) * box [0, z_k for k != i in increasing order]."""
    total = Polynomial.zero()
    for i in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != i]
        value = box_integral(f, [Polynomial.zero()] * len(others), [z_poly(k, at) for k in others])
        total = total + value if rule.sign(i, n) > 0 else total - value
    return total


def shifted_box_right(f: Polynomial, n: int, at: Optional[Point] = None) -> Polynomial:
    """box [z_1, z_2] x ... x [z_1, z_n]."""
    z1 = z_poly(1, at)
    return box_integral(f, [z1] * (n - 1), [z_poly(k, at) for k in range(2, n + 1)])


def region_integrand(n: int, a: Sequence[int], at: Optional[Point] = None) -> Polynomial:
    """V(y_1..y_{n-1}) * prod_j prod_k (y_k - z_j)^{a_j}; antisymmetric in the y's."""
    result = vandermonde_product([y_var(k) for k in range(1, n)])
    for k in range(1, n):
        result = result * _f(a, Polynomial.var(y_var(k)), at)
    return result


def monomial_basis(m: int, max_degree: int) -> List[Polynomial]:
    """Every monomial in y_1..y_m of total degree <= max_degree."""
    basis = []
    for exps in itertools.product(range(max_degree + 1), repeat=m):
        if sum(exps) <= max_degree:
            basis.append(Polynomial.from_terms([
                (1, {y_var(k): e for k, e in enumerate(exps, start=1)})
            ]))
    return basis


def _basis_sides(n: int, max_degree: int, rule: SignRule, at: Optional[Point]) -> Sides:
    sides: Sides = []
    for f in monomial_basis(n - 1, max_degree):
        label = f"integrand {f}"
        sides.append((label, region_sum_left(f, n, rule, at), region_sum_right(f, n, at)))
    return sides


def region_identity_check(
    n: int,
    a: Sequence[int],
    max_basis_degree: int = 2,
    sign_rule: Optional[SignRule] = None,
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """Signed region identity on a monomial basis, the shifted-box identity for the
    actual integrand, and the (n-1)! relation between the two forms."""
    if n < 2:
        raise InvalidInstanceError("the region identity needs n >= 2")
    inst = _instance(n, a)
    rule = sign_rule or CALIBRATED_RULES[CalibratedIdentity.REGION]
    scale = factorial(n - 1)

    def build(at):
        sides = _basis_sides(n, max_basis_degree, rule, at)
        f = region_integrand(n, inst.a, at)
        left, right = shifted_box_left(f, n, rule, at), shifted_box_right(f, n, at)
        sides.append(("shifted box", left, right))
        sides.append(("permutation sum, left", region_sum_left(f, n, rule, at), left.scale(scale)))
        sides.append(("permutation sum, right", region_sum_right(f, n, at), right.scale(scale)))
        return sides

    return run_check(
        CheckName.REGION,
        inst,
        mode,
        build,
        variables=[z_var(k) for k in range(1, n + 1)],
        budget=budget,
    )


# Calibration ---------------------------------------------------------------

def _all_equal(sides: Sides) -> bool:
    return all((lhs - rhs).is_zero for _, lhs, rhs in sides)


def _differential_passes(n: int, rule: SignRule) -> bool:
    cases = [(0,) * n, (1,) + (0,) * (n - 1)]
    for a in cases:
        left, right = differential_identity_sides(n, a, rule)
        if not (left - right).is_zero:
            return False
    return True


def _region_passes(n: int, rule: SignRule) -> bool:
    return _all_equal(_basis_sides(n, n, rule, None))


def calibrate_sign_rule(
    check: CalibratedIdentity,
    n_values: Sequence[int] = CALIBRATION_N,
) -> CalibrationResult:
    """Run the identity under every candidate rule for each n and tabulate pass/fail.

    Raises NoConsistentRuleError when every candidate fails at some n in ``n_values``.
    """
    passes = _differential_passes if check == CalibratedIdentity.DIFFERENTIAL else _region_passes
    table: Dict[SignRule, Dict[int, bool]] = {}
    for rule in SignRule:
        table[rule] = {n: passes(n, rule) for n in n_values}
        logger.info(f"calibrate {check.value} {rule.value}: {table[rule]}")
    per_n = {n: [rule for rule in SignRule if table[rule][n]] for n in n_values}
    consistent = [rule for rule in SignRule if all(table[rule].values())]
    if not consistent:
        raise NoConsistentRuleError(check.value, table)
    return CalibrationResult(
        check=check,
        n_values=list(n_values),
        table=table,
        rule=consistent[0] if len(consistent) == 1 else None,
        per_n=per_n,
    )
