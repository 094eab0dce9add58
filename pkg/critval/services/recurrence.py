"""The b -> b+1 recurrence for the multi-integral and its closed form.

X(a; b+1) = sum_i (prod_{j != i} z_j / (z_j - z_i)) X(a + e_i; b) + (prod_j z_j) X(a; b)

Denominators are cleared by D = prod_{i<j} (z_j - z_i)^2, so every comparison
is between polynomials.
"""
from enum import Enum
from typing import Optional

from critval.models.polynomial import Polynomial, RationalFunction, x_var, z_var
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.checks import run_check
from critval.services.theorem_a import (
    Point,
    integrand,
    theorem_a_lhs,
    theorem_a_rhs,
    total_degree,
    z_poly,
)


class RecurrenceLevel(str, Enum):
    """Where the recurrence is checked."""
    VALUE = "value"
    INTEGRAND = "integrand"


class Side(str, Enum):
    """Which builder stands in for X."""
    LHS = "lhs"
    RHS = "rhs"
    INTEGRAND = "integrand"


def build_side(side: Side, inst: IdentityInstance, at: Optional[Point] = None) -> Polynomial:
    if side == Side.LHS:
        return theorem_a_lhs(inst, at=at)
    if side == Side.RHS:
        return theorem_a_rhs(inst, at=at)
    return integrand(inst, at=at)


def recurrence_denominator(n: int, at: Optional[Point] = None) -> Polynomial:
    """D = prod_{i<j} (z_j - z_i)^2."""
    result = Polynomial.one()
    for j in range(1, n + 1):
        for i in range(1, j):
            result = result * (z_poly(j, at) - z_poly(i, at)) ** 2
    return result


def cleared_multiplier(n: int, i: int, at: Optional[Point] = None) -> Polynomial:
    """D / prod_{j != i} (z_j - z_i), built without division.

    prod_{j != i} (z_j - z_i) = (-1)^(i-1) prod over the pairs containing i, so the
    quotient keeps one factor of each such pair and two of every other pair.
    """
    result = Polynomial.constant(-1 if (i - 1) % 2 else 1)
    for q in range(1, n + 1):
        for p in range(1, q):
            factor = z_poly(q, at) - z_poly(p, at)
            result = result * (factor if i in (p, q) else factor ** 2)
    return result


def recurrence_rhs_value(
    inst: IdentityInstance,
    side: Side,
    at: Optional[Point] = None,
) -> RationalFunction:
    """Right side of the recurrence over the common denominator D."""
    n = inst.n
    numerator = Polynomial.zero()
    for i in range(1, n + 1):
        coefficient = cleared_multiplier(n, i, at)
        for j in range(1, n + 1):
            if j != i:
                coefficient = coefficient * z_poly(j, at)
        numerator = numerator + coefficient * build_side(side, inst.bumped(i), at)
    denominator = recurrence_denominator(n, at)
    z_product = Polynomial.one()
    for j in range(1, n + 1):
        z_product = z_product * z_poly(j, at)
    numerator = numerator + z_product * denominator * build_side(side, inst, at)
    return RationalFunction(numerator, denominator)


def verify_recurrence(
    inst: IdentityInstance,
    level: RecurrenceLevel = RecurrenceLevel.VALUE,
    mode: CheckMode = CheckMode.symbolic(),
    side: Optional[Side] = None,
    budget: Optional[int] = None,
) -> CheckOutcome:
    """X(a; b+1) against the recurrence, at value level (closed form) or integrand level."""
    if side is None:
        side = Side.RHS if level == RecurrenceLevel.VALUE else Side.INTEGRAND
    name = (
        CheckName.RECURRENCE_VALUE if level == RecurrenceLevel.VALUE
        else CheckName.RECURRENCE_INTEGRAND
    )

    def build(at):
        target = build_side(side, inst.with_b(inst.b + 1), at)
        value = recurrence_rhs_value(inst, side, at)
        # X(a; b+1) == num / den  <=>  X(a; b+1) * den == num
        return [("", target * value.den, value.num)]

    variables = [z_var(k) for k in range(1, inst.n + 1)]
    if side == Side.INTEGRAND:
        variables += [x_var(k) for k in range(1, inst.n + 1)]
    return run_check(
        name,
        inst,
        mode,
        build,
        variables=variables,
        degree_hint=total_degree(inst.with_b(inst.b + 1)) + inst.n * (inst.n - 1),
        budget=budget,
    )
