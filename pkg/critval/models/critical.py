"""Polynomials with prescribed critical points."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from critval.core.exceptions import (
    InvalidInstanceError,
    TheoremBRequiresPositiveMultiplicityError,
)
from critval.models.polynomial import Polynomial, Scalar, VariableId, z_var


@dataclass(frozen=True)
class CriticalSpec:
    """Critical points z_1..z_n with multiplicities a_i >= 1.

    ``points`` is None for symbolic z-variables, else n distinct rationals.
    """
    multiplicities: Tuple[int, ...]
    points: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if not self.multiplicities:
            raise InvalidInstanceError("a critical spec needs at least one point")
        if any(ai < 1 for ai in self.multiplicities):
            raise TheoremBRequiresPositiveMultiplicityError(self.multiplicities)
        if self.points is not None:
            if len(self.points) != self.n:
                raise InvalidInstanceError(
                    f"{len(self.points)} points given for {self.n} multiplicities"
                )
            if len(set(self.points)) != len(self.points):
                raise InvalidInstanceError("critical points must be pairwise distinct")

    @classmethod
    def symbolic(cls, multiplicities: Sequence[int]) -> "CriticalSpec":
        return cls(tuple(multiplicities))

    @classmethod
    def rational(cls, multiplicities: Sequence[int], points: Sequence[Scalar]) -> "CriticalSpec":
        return cls(tuple(multiplicities), tuple(Fraction(p) for p in points))

    @property
    def n(self) -> int:
        return len(self.multiplicities)

    @property
    def is_symbolic(self) -> bool:
        return self.points is None

    def point(self, i: int) -> Polynomial:
        """z_i, or its value (1-based)."""
        if self.points is None:
            return Polynomial.var(z_var(i))
        return Polynomial.constant(self.points[i - 1])

    def assignment(self) -> dict:
        """{z_i: value} for rational specs; empty for symbolic ones."""
        if self.points is None:
            return {}
        return {z_var(i): p for i, p in enumerate(self.points, start=1)}

    def as_symbolic(self) -> "CriticalSpec":
        return CriticalSpec(self.multiplicities)

    def variables(self) -> Tuple[VariableId, ...]:
        return tuple(z_var(i) for i in range(1, self.n + 1))
