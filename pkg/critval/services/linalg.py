"""Determinants over polynomial rings, Vandermonde and Cauchy alternant products."""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from critval.core.exceptions import ExactDivisionFailedError, InvalidInstanceError
from critval.models.matrix import PolyMatrix, RatMatrix
from critval.models.polynomial import (
    Polynomial,
    RationalFunction,
    VariableId,
    x_var,
    z_var,
)
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.checks import run_check

logger = logging.getLogger(__name__)


def det_cofactor(m: PolyMatrix) -> Polynomial:
    """Laplace expansion along the first row, memoized on the remaining columns."""
    n = m.n
    cache: Dict[Tuple[int, ...], Polynomial] = {}

    def minor(cols: Tuple[int, ...]) -> Polynomial:
        row = n - len(cols)
        if not cols:
            return Polynomial.one()
        if cols in cache:
            return cache[cols]
        total = Polynomial.zero()
        for pos, col in enumerate(cols):
            entry = m.entries[row][col]
            if entry.is_zero:
                continue
            rest = minor(cols[:pos] + cols[pos + 1:])
            term = entry * rest
            total = total - term if pos % 2 else total + term
        cache[cols] = total
        return total

    return minor(tuple(range(n)))


def det_bareiss(m: PolyMatrix) -> Polynomial:
    """Fraction-free elimination; every division by the previous pivot is exact."""
    n = m.n
    a: List[List[Polynomial]] = m.rows()
    sign = 1
    previous = Polynomial.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                logger.debug(f"column {k} has no pivot, falling back to cofactor expansion")
                return det_cofactor(m)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                value = pivot * a[i][j] - a[i][k] * a[k][j]
                try:
                    a[i][j] = value.exact_divide(previous)
                except ExactDivisionFailedError:
                    logger.error(f"inexact fraction-free step at pivot {k}, entry ({i}, {j})")
                    raise
            a[i][k] = Polynomial.zero()
        previous = pivot
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def det_rational(m: RatMatrix) -> RationalFunction:
    """Cofactor expansion over unreduced rational functions."""
    n = m.n
    cache: Dict[Tuple[int, ...], RationalFunction] = {}

    def minor(cols: Tuple[int, ...]) -> RationalFunction:
        row = n - len(cols)
        if not cols:
            return RationalFunction(1)
        if cols in cache:
            return cache[cols]
        total = RationalFunction(0)
        for pos, col in enumerate(cols):
            entry = m.entries[row][col]
            if entry.is_zero:
                continue
            term = entry * minor(cols[:pos] + cols[pos + 1:])
            total = total - term if pos % 2 else total + term
        cache[cols] = total
        return total

    return minor(tuple(range(n)))


def vandermonde_product(variables: Sequence[VariableId]) -> Polynomial:
    """Expanded product of (v_j - v_i) over i < j."""
    result = Polynomial.one()
    vs = [Polynomial.var(v) for v in variables]
    for j in range(len(vs)):
        for i in range(j):
            result = result * (vs[j] - vs[i])
    return result


def cauchy_alternant(n: int) -> RatMatrix:
    """The matrix with (i, j) entry 1 / (x_j - z_i)."""
    return RatMatrix.build(
        n, lambda i, j: RationalFunction(1, Polynomial.var(x_var(j + 1)) - Polynomial.var(z_var(i + 1)))
    )


def cauchy_numerator(n: int) -> Polynomial:
    """prod over i < j of (z_i - z_j)(x_j - x_i)."""
    result = Polynomial.one()
    for j in range(1, n + 1):
        for i in range(1, j):
            zi, zj = Polynomial.var(z_var(i)), Polynomial.var(z_var(j))
            xi, xj = Polynomial.var(x_var(i)), Polynomial.var(x_var(j))
            result = result * (zi - zj) * (xj - xi)
    return result


def cauchy_denominator(n: int) -> Polynomial:
    """prod over all i, j of (x_j - z_i)."""
    result = Polynomial.one()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            result = result * (Polynomial.var(x_var(j)) - Polynomial.var(z_var(i)))
    return result


def cauchy_closed_form(n: int) -> RationalFunction:
    if n < 1:
        raise ValueError("alternant size must be positive")
    return RationalFunction(cauchy_numerator(n), cauchy_denominator(n))


def scaled_cauchy_alternant(n: int) -> PolyMatrix:
    """Row i of the alternant times prod_k (x_k - z_i): entry prod_{k != j} (x_k - z_i).

    Its determinant equals the closed-form numerator.
    """
    def entry(i: int, j: int) -> Polynomial:
        zi = Polynomial.var(z_var(i + 1))
        result = Polynomial.one()
        for k in range(n):
            if k != j:
                result = result * (Polynomial.var(x_var(k + 1)) - zi)
        return result

    return PolyMatrix.build(n, entry)


def _alternant_instance(n: int) -> IdentityInstance:
    # alternant checks have no multiplicities; report them against a = 0
    return IdentityInstance(n=n, a=(0,) * n, b=0)


def verify_cauchy(
    n: int,
    mode: CheckMode = CheckMode.symbolic(),
    scaled: bool = False,
    budget: Optional[int] = None,
) -> CheckOutcome:
    """det of the alternant against its closed form.

    With ``scaled`` the row-scaled polynomial matrix is compared with the closed-form
    numerator instead. Symbolic mode cross-multiplies; Evaluate mode takes the
    determinant of the evaluated matrix.
    """
    if n < 1:
        raise InvalidInstanceError("alternant size must be positive")

    def build(at):
        if scaled:
            matrix = scaled_cauchy_alternant(n)
            if at is None:
                return [("", det_cofactor(matrix), cauchy_numerator(n))]
            return [("", det_bareiss(matrix.evaluate(at)), cauchy_numerator(n))]
        closed = cauchy_closed_form(n)
        if at is None:
            det = det_rational(cauchy_alternant(n))
            return [("", det.num * closed.den, closed.num * det.den)]
        values = PolyMatrix.of(cauchy_alternant(n).evaluate(at))
        return [("", det_bareiss(values), Polynomial.constant(closed.evaluate(at)))]

    variables = [x_var(k) for k in range(1, n + 1)] + [z_var(k) for k in range(1, n + 1)]
    return run_check(
        CheckName.CAUCHY_SCALED if scaled else CheckName.CAUCHY,
        _alternant_instance(n),
        mode,
        build,
        variables=variables,
        degree_hint=n * (n - 1),
        budget=budget,
    )
