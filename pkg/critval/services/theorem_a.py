"""Both sides of the multi-integral identity.

Left side: the iterated integral over the box [0, z_1] x ... x [0, z_n] of

    prod_i x_i^b * prod_{j,k} (x_j - z_k)^{a_k} * prod_{i<j} (x_j - x_i)

Right side: (-1)^abar * prod_{i<j} (z_j - z_i)^{a_i+a_j+1} * prod_i z_i^{a_i+b+1}
            * b! prod_i a_i! / (n + b + sum a)!
"""
import logging
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from critval.core.exceptions import InvalidInstanceError
from critval.models.matrix import PolyMatrix
from critval.models.polynomial import Polynomial, VariableId, factorial, x_var, z_var
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.checks import run_check
from critval.services.linalg import det_bareiss, det_cofactor, vandermonde_product

logger = logging.getLogger(__name__)

Point = Mapping[VariableId, Fraction]


def z_poly(k: int, at: Optional[Point] = None) -> Polynomial:
    """z_k, or its value when ``at`` assigns it."""
    v = z_var(k)
    if at is not None and v in at:
        return Polynomial.constant(at[v])
    return Polynomial.var(v)


def variable_factor(inst: IdentityInstance, j: int, at: Optional[Point] = None) -> Polynomial:
    """x_j^b * prod_k (x_j - z_k)^{a_k}: everything in the integrand that involves x_j alone."""
    xj = Polynomial.var(x_var(j))
    result = xj ** inst.b
    for k, ak in enumerate(inst.a, start=1):
        result = result * (xj - z_poly(k, at)) ** ak
    return result


def integrand(inst: IdentityInstance, at: Optional[Point] = None) -> Polynomial:
    result = Polynomial.one()
    for j in range(1, inst.n + 1):
        result = result * variable_factor(inst, j, at)
    return result * vandermonde_product([x_var(j) for j in range(1, inst.n + 1)])


def total_degree(inst: IdentityInstance) -> int:
    """Degree of every monomial of either side."""
    n, a, b = inst.n, inst.a, inst.b
    pairs = sum(a[i] + a[j] + 1 for j in range(n) for i in range(j))
    return pairs + sum(ai + b + 1 for ai in a)


def theorem_a_lhs(
    inst: IdentityInstance,
    order: Optional[Sequence[int]] = None,
    at: Optional[Point] = None,
) -> Polynomial:
    """Integrate x_n over [0, z_n], then x_{n-1}, ..., then x_1 (or in ``order``)."""
    if order is None:
        order = range(inst.n, 0, -1)
    order = list(order)
    if sorted(order) != list(range(1, inst.n + 1)):
        raise InvalidInstanceError(f"integration order {order} is not a permutation of 1..{inst.n}")
    result = integrand(inst, at)
    for i in order:
        result = result.definite_integral(x_var(i), 0, z_poly(i, at))
    return result


def moment_matrix(inst: IdentityInstance, at: Optional[Point] = None) -> PolyMatrix:
    """(j, m) entry: int_0^{z_j} x^{b+m-1} prod_k (x - z_k)^{a_k} dx, 1-based.

    Writing the Vandermonde factor as det(x_j^{m-1}) and integrating row by row,
    the box integral of the integrand is the determinant of this matrix.
    """
    x = x_var(1)
    base = variable_factor(inst, 1, at)
    xp = Polynomial.var(x)

    def entry(j: int, m: int) -> Polynomial:
        return (base * xp ** m).definite_integral(x, 0, z_poly(j + 1, at))

    return PolyMatrix.build(inst.n, entry)


def theorem_a_lhs_det(inst: IdentityInstance, at: Optional[Point] = None) -> Polynomial:
    """Left side as det of the one-variable moment matrix; n^2 integrals instead of n nested ones."""
    matrix = moment_matrix(inst, at)
    if all(p.is_constant for row in matrix.entries for p in row):
        return det_bareiss(matrix)
    return det_cofactor(matrix)


def theorem_a_constant(inst: IdentityInstance) -> Fraction:
    """(-1)^abar * b! prod a_i! / (n + b + sum a)!"""
    numerator = factorial(inst.b)
    for ai in inst.a:
        numerator *= factorial(ai)
    value = Fraction(numerator, factorial(inst.n + inst.b + inst.a_sum))
    return -value if inst.abar % 2 else value


def theorem_a_rhs(inst: IdentityInstance, at: Optional[Point] = None) -> Polynomial:
    n, a, b = inst.n, inst.a, inst.b
    result = Polynomial.constant(theorem_a_constant(inst))
    for j in range(1, n + 1):
        for i in range(1, j):
            result = result * (z_poly(j, at) - z_poly(i, at)) ** (a[i - 1] + a[j - 1] + 1)
    for i in range(1, n + 1):
        result = result * z_poly(i, at) ** (a[i - 1] + b + 1)
    return result


def verify_theorem_a(
    inst: IdentityInstance,
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """Left side minus right side is zero, or both agree at every sampled point.

    Symbolic mode integrates the full integrand; Evaluate mode uses the moment determinant.
    """
    def build(at):
        # at sample points every z is fixed, so the moment determinant is a rational
        lhs = theorem_a_lhs(inst) if at is None else theorem_a_lhs_det(inst, at)
        return [("", lhs, theorem_a_rhs(inst, at=at))]

    return run_check(
        CheckName.THEOREM_A,
        inst,
        mode,
        build,
        variables=[z_var(k) for k in range(1, inst.n + 1)],
        degree_hint=total_degree(inst),
        budget=budget,
    )
