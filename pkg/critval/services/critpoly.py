"""Critical values of p(Z) = int_0^Z prod_i (w - z_i)^{a_i} dw and their Jacobian.

J[i][j] = d/dz_i p(z_j). Two constructions are kept: the direct partial
derivative of the critical value, and the integral rewrite

    J[i][j] = -a_i * int_0^{z_j} (w - z_i)^{a_i - 1} prod_{k != i} (w - z_k)^{a_k} dw

whose diagonal would carry an extra upper-limit term p'(z_i), which vanishes.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from critval.core.exceptions import (
    InvalidInstanceError,
    InvariantViolationError,
    TheoremBRequiresPositiveMultiplicityError,
)
from critval.models.critical import CriticalSpec
from critval.models.matrix import PolyMatrix
from critval.models.polynomial import BIGZ_VAR, W_VAR, Polynomial, factorial, z_var
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.checks import Sides, run_check
from critval.services.linalg import det_bareiss, det_cofactor
from critval.services.theorem_a import Point, z_poly

logger = logging.getLogger(__name__)


def require_positive(a: Sequence[int]) -> None:
    if any(ai < 1 for ai in a):
        raise TheoremBRequiresPositiveMultiplicityError(a)


def p_derivative(spec: CriticalSpec, variable=BIGZ_VAR) -> Polynomial:
    """prod_i (v - z_i)^{a_i}."""
    v = Polynomial.var(variable)
    result = Polynomial.one()
    for i, ai in enumerate(spec.multiplicities, start=1):
        result = result * (v - spec.point(i)) ** ai
    return result


def build_p(spec: CriticalSpec) -> Polynomial:
    """p(Z) with p(0) = 0 and p'(Z) = prod (Z - z_i)^{a_i}."""
    return p_derivative(spec, W_VAR).definite_integral(W_VAR, 0, Polynomial.var(BIGZ_VAR))


def critical_values(spec: CriticalSpec) -> Union[List[Polynomial], List[Fraction]]:
    """p(z_1), ..., p(z_n); rationals when the points are."""
    p = build_p(spec)
    values = [p.substitute(BIGZ_VAR, spec.point(j)) for j in range(1, spec.n + 1)]
    if spec.is_symbolic:
        return values
    return [v.constant_term() for v in values]


def _require_symbolic(spec: CriticalSpec) -> None:
    if not spec.is_symbolic:
        raise InvalidInstanceError("the Jacobian is taken with respect to symbolic critical points")


def jacobian_direct(spec: CriticalSpec) -> PolyMatrix:
    """(i, j) entry: partial of p(z_j) with respect to z_i."""
    _require_symbolic(spec)
    values = critical_values(spec)
    return PolyMatrix.build(spec.n, lambda i, j: values[j].derivative(z_var(i + 1)))


def upper_limit_term(spec: CriticalSpec, j: int) -> Polynomial:
    """p'(z_j), the chain-rule term of the diagonal entry (j, j)."""
    return p_derivative(spec).substitute(BIGZ_VAR, spec.point(j))


def jacobian_rewrite(spec: CriticalSpec) -> PolyMatrix:
    """Entries from the integral rewrite, lowering the exponent of (w - z_i) instead of dividing."""
    _require_symbolic(spec)
    a = spec.multiplicities
    w = Polynomial.var(W_VAR)

    def entry(i: int, j: int) -> Polynomial:
        row = i + 1
        integrand = Polynomial.one()
        for k, ak in enumerate(a, start=1):
            exponent = ak - 1 if k == row else ak
            integrand = integrand * (w - spec.point(k)) ** exponent
        value = integrand.definite_integral(W_VAR, 0, spec.point(j + 1)).scale(-a[i])
        if i == j:
            boundary = upper_limit_term(spec, row)
            if not boundary.is_zero:
                raise InvariantViolationError(
                    f"upper-limit term of diagonal entry {row} is {boundary}, expected 0"
                )
            value = value + boundary
        return value

    return PolyMatrix.build(spec.n, entry)


def theorem_b_constant(a: Sequence[int]) -> Fraction:
    """prod a_i! / (sum a)!"""
    numerator = 1
    for ai in a:
        numerator *= factorial(ai)
    return Fraction(numerator, factorial(sum(a)))


def theorem_b_rhs(n: int, a: Sequence[int], at: Optional[Point] = None) -> Polynomial:
    """prod a_i!/(sum a)! * prod (-z_i)^{a_i} * prod_{i != j} (z_i - z_j)^{a_j}."""
    require_positive(a)
    if len(a) != n:
        raise InvalidInstanceError(f"a has {len(a)} entries, expected n={n}")
    result = Polynomial.constant(theorem_b_constant(a))
    for i in range(1, n + 1):
        result = result * (-z_poly(i, at)) ** a[i - 1]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                result = result * (z_poly(i, at) - z_poly(j, at)) ** a[j - 1]
    return result


def theorem_b_degree(a: Sequence[int]) -> int:
    """Total degree of every monomial of det J."""
    return len(a) * sum(a)


def verify_theorem_b(
    n: int,
    a: Sequence[int],
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """det J against the closed form; Evaluate mode takes the determinant of J at each point."""
    require_positive(a)
    inst = IdentityInstance(n=n, a=tuple(a), b=0)
    spec = CriticalSpec.symbolic(inst.a)
    cache: List[PolyMatrix] = []

    def jacobian() -> PolyMatrix:
        if not cache:
            cache.append(jacobian_direct(spec))
        return cache[0]

    def build(at):
        if at is None:
            det = det_cofactor(jacobian())
        else:
            det = det_bareiss(jacobian().evaluate(at))
        return [("", det, theorem_b_rhs(n, inst.a, at))]

    return run_check(
        CheckName.THEOREM_B,
        inst,
        mode,
        build,
        variables=list(spec.variables()),
        degree_hint=theorem_b_degree(inst.a),
        budget=budget,
    )


def verify_jacobian_paths(
    n: int,
    a: Sequence[int],
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """The direct and rewritten Jacobians agree entrywise."""
    require_positive(a)
    inst = IdentityInstance(n=n, a=tuple(a), b=0)
    spec = CriticalSpec.symbolic(inst.a)
    cache: Sides = []

    def build(at):
        # both paths are symbolic; sample points only evaluate them
        if not cache:
            direct, rewrite = jacobian_direct(spec), jacobian_rewrite(spec)
            for i in range(n):
                for j in range(n):
                    cache.append((f"J[{i + 1},{j + 1}]", direct[i, j], rewrite[i, j]))
        return cache

    return run_check(
        CheckName.JACOBIAN_PATHS,
        inst,
        mode,
        build,
        variables=list(spec.variables()),
        degree_hint=sum(inst.a),
        budget=budget,
    )


def jacobian_at(spec: CriticalSpec) -> Tuple[PolyMatrix, Fraction]:
    """The symbolic Jacobian evaluated at rational critical points, and its determinant."""
    if spec.is_symbolic:
        raise InvalidInstanceError("jacobian_at needs rational critical points")
    matrix = jacobian_direct(spec.as_symbolic()).evaluate(spec.assignment())
    det = det_bareiss(matrix).constant_term()
    logger.debug(f"jacobian at {spec.points}: det = {det}")
    return matrix, det
