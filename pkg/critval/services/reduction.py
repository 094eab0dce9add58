"""Steps of the induction: the n -> n-1 reduction, the boundary term, and the closed-form chain to the Jacobian identity."""
import logging
from fractions import Fraction
from typing import Dict, Optional, Sequence

from critval.core.exceptions import InvalidInstanceError
from critval.models.polynomial import Polynomial, VariableId, factorial, x_var, z_var
from critval.schemas.calibration import CalibratedIdentity
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.checks import Sides, run_check
from critval.services.critpoly import require_positive, theorem_b_rhs
from critval.services.signs import (
    CALIBRATED_RULES,
    region_integrand,
    shifted_box_right,
)
from critval.services.theorem_a import (
    Point,
    theorem_a_lhs,
    theorem_a_rhs,
    total_degree,
    z_poly,
)

logger = logging.getLogger(__name__)


def reduced_instance(inst: IdentityInstance) -> IdentityInstance:
    """(n, a, 0) -> (n-1, (a_2..a_n), b=a_1)."""
    return IdentityInstance(n=inst.n - 1, a=inst.a[1:], b=inst.a[0])


def shift_map(n: int, at: Optional[Point] = None) -> Dict[VariableId, Polynomial]:
    """z_k -> z_{k+1} - z_1 for k = 1..n-1, applied simultaneously."""
    z1 = z_poly(1, at)
    return {z_var(k): z_poly(k + 1, at) - z1 for k in range(1, n)}


def _shifted_point(n: int, at: Point) -> Point:
    return {z_var(k): at[z_var(k + 1)] - at[z_var(1)] for k in range(1, n)}


def _reduced_side(inst: IdentityInstance, closed: bool, at: Optional[Point]) -> Polynomial:
    """A side of the reduced instance, written in the original z variables."""
    reduced = reduced_instance(inst)
    build = theorem_a_rhs if closed else theorem_a_lhs
    if at is not None:
        return build(reduced, at=_shifted_point(inst.n, at))
    return build(reduced).compose(shift_map(inst.n))


def closure_sign(n: int) -> int:
    """Constant ratio of the calibrated differential and region sign rules."""
    differential = CALIBRATED_RULES[CalibratedIdentity.DIFFERENTIAL]
    region = CALIBRATED_RULES[CalibratedIdentity.REGION]
    return differential.sign(1, n) * region.sign(1, n)


def boundary_product(a: Sequence[int], at: Optional[Point] = None) -> Polynomial:
    """prod_j (-z_j)^{a_j + 1}."""
    result = Polynomial.one()
    for j, aj in enumerate(a, start=1):
        result = result * (-z_poly(j, at)) ** (aj + 1)
    return result


def reduction_step_check(
    n: int,
    a: Sequence[int],
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """The shifted box on [z_1, z_k] against the (n-1)-instance with b = a_1 at z_k - z_1,
    then the assembled base-zero statement."""
    if n < 2:
        raise InvalidInstanceError("the reduction step needs n >= 2")
    inst = IdentityInstance(n=n, a=tuple(a), b=0)

    def build(at):
        box = shifted_box_right(region_integrand(n, inst.a, at), n, at)
        closed = _reduced_side(inst, True, at)
        sides: Sides = [
            ("change of variables", box, _reduced_side(inst, False, at)),
            ("reduced closed form", box, closed),
        ]
        lhs = theorem_a_lhs(inst, at=at).scale(n + inst.a_sum)
        rhs = (boundary_product(inst.a, at) * closed).scale(-closure_sign(n))
        sides.append(("base-zero closure", lhs, rhs))
        return sides

    return run_check(
        CheckName.REDUCTION,
        inst,
        mode,
        build,
        variables=[z_var(k) for k in range(1, n + 1)],
        degree_hint=total_degree(inst),
        budget=budget,
    )


def boundary_sides(
    inst: IdentityInstance, i: int, at: Optional[Point] = None
) -> Sides:
    """Upper minus lower evaluation of prod_j (x_i - z_j)^{a_j+1} prod_{i' != i} f(x_{i'})."""
    rest = Polynomial.one()
    for ip in range(1, inst.n + 1):
        if ip == i:
            continue
        xp = Polynomial.var(x_var(ip))
        for j, aj in enumerate(inst.a, start=1):
            rest = rest * (xp - z_poly(j, at)) ** aj
    xi = Polynomial.var(x_var(i))
    g = Polynomial.one()
    for j, aj in enumerate(inst.a, start=1):
        g = g * (xi - z_poly(j, at)) ** (aj + 1)
    upper = g.substitute(x_var(i), z_poly(i, at))
    lower = g.substitute(x_var(i), 0)
    expected = -boundary_product(inst.a, at)
    return [
        (f"i={i} upper limit", upper, Polynomial.zero()),
        (f"i={i}", (upper - lower) * rest, expected * rest),
    ]


def boundary_term_check(
    n: int,
    a: Sequence[int],
    i: Optional[int] = None,
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """Boundary term for index ``i``, or for every index when ``i`` is None."""
    inst = IdentityInstance(n=n, a=tuple(a), b=0)
    if i is not None and not 1 <= i <= n:
        raise InvalidInstanceError(f"index i={i} is outside 1..{n}")
    indices = [i] if i is not None else list(range(1, n + 1))

    def build(at):
        sides: Sides = []
        for index in indices:
            sides.extend(boundary_sides(inst, index, at))
        return sides

    variables = [z_var(k) for k in range(1, n + 1)] + [x_var(k) for k in range(1, n + 1)]
    return run_check(
        CheckName.BOUNDARY,
        inst,
        mode,
        build,
        variables=variables,
        degree_hint=sum(a) * n + n,
        budget=budget,
    )


def shifted_instance(a: Sequence[int]) -> IdentityInstance:
    """(a_1 - 1, ..., a_n - 1) with b = 0."""
    return IdentityInstance(n=len(a), a=tuple(ai - 1 for ai in a), b=0)


def chain_prefactor(a: Sequence[int], at: Optional[Point] = None) -> Polynomial:
    """prod_i (-a_i) * prod_{i<j} (z_i - z_j): what the alternant contributes."""
    result = Polynomial.one()
    for ai in a:
        result = result.scale(-ai)
    n = len(a)
    for j in range(1, n + 1):
        for i in range(1, j):
            result = result * (z_poly(i, at) - z_poly(j, at))
    return result


def chain_lhs(a: Sequence[int], at: Optional[Point] = None) -> Polynomial:
    """Prefactor times the closed form of the shifted instance, written out factor by factor."""
    n = len(a)
    shifted = shifted_instance(a)
    constant = Fraction(1, factorial(sum(a)))
    for ai in a:
        constant *= factorial(ai - 1)
    if shifted.abar % 2:
        constant = -constant
    result = chain_prefactor(a, at).scale(constant)
    for j in range(1, n + 1):
        for i in range(1, j):
            result = result * (z_poly(j, at) - z_poly(i, at)) ** (a[i - 1] + a[j - 1] - 1)
    for i in range(1, n + 1):
        result = result * z_poly(i, at) ** a[i - 1]
    return result


def a_implies_b_chain_check(
    n: int,
    a: Sequence[int],
    mode: CheckMode = CheckMode.symbolic(),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """Alternant prefactor times the b=0 closed form of (a - 1) equals the Jacobian right side."""
    require_positive(a)
    inst = IdentityInstance(n=n, a=tuple(a), b=0)
    shifted = shifted_instance(inst.a)

    def build(at):
        lhs = chain_lhs(inst.a, at)
        return [
            ("closed form", lhs, theorem_b_rhs(n, inst.a, at)),
            ("theorem A substitution", lhs, chain_prefactor(inst.a, at) * theorem_a_rhs(shifted, at=at)),
            ("integral", lhs, chain_prefactor(inst.a, at) * theorem_a_lhs(shifted, at=at)),
        ]

    return run_check(
        CheckName.CHAIN,
        inst,
        mode,
        build,
        variables=[z_var(k) for k in range(1, n + 1)],
        degree_hint=n * inst.a_sum,
        budget=budget,
    )
