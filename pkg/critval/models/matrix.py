"""Square matrices over polynomials and rational functions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Mapping, Sequence, Tuple, Union

from critval.core.exceptions import InvalidInstanceError
from critval.models.polynomial import Polynomial, RationalFunction, Scalar, VariableId

PolyLike = Union[Polynomial, Scalar]


def _check_square(rows: Sequence[Sequence[object]]) -> int:
    n = len(rows)
    if n < 1:
        raise InvalidInstanceError("matrix must have at least one row")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidInstanceError(f"row {i} has {len(row)} entries, expected {n}")
    return n


@dataclass(frozen=True)
class PolyMatrix:
    """n x n grid of polynomials; the zero polynomial is a valid entry."""
    entries: Tuple[Tuple[Polynomial, ...], ...]

    def __post_init__(self):
        _check_square(self.entries)

    @classmethod
    def of(cls, rows: Sequence[Sequence[PolyLike]]) -> "PolyMatrix":
        coerced = []
        for row in rows:
            coerced.append(tuple(
                p if isinstance(p, Polynomial) else Polynomial.constant(p) for p in row
            ))
        return cls(tuple(coerced))

    @classmethod
    def build(cls, n: int, entry: Callable[[int, int], PolyLike]) -> "PolyMatrix":
        """Build from a 0-based ``entry(i, j)`` callback."""
        return cls.of([[entry(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.build(n, lambda i, j: 1 if i == j else 0)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: Tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> List[List[Polynomial]]:
        return [list(row) for row in self.entries]

    def swap_rows(self, i: int, j: int) -> "PolyMatrix":
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return PolyMatrix(tuple(rows))

    def map(self, fn: Callable[[Polynomial], PolyLike]) -> "PolyMatrix":
        return PolyMatrix.of([[fn(p) for p in row] for row in self.entries])

    def evaluate(self, point: Mapping[VariableId, Scalar]) -> "PolyMatrix":
        """Entrywise evaluation into a constant matrix."""
        return self.map(lambda p: p.evaluate(point))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.n != self.n:
            raise InvalidInstanceError("matrix dimensions differ")
        n = self.n
        return PolyMatrix.build(n, lambda i, j: sum(
            (self.entries[i][k] * other.entries[k][j] for k in range(n)), Polynomial.zero()
        ))

    def to_text(self) -> List[List[str]]:
        """Row-major canonical text, as written into reports."""
        return [[str(p) for p in row] for row in self.entries]


@dataclass(frozen=True)
class RatMatrix:
    """n x n grid of rational functions with nonzero denominators."""
    entries: Tuple[Tuple[RationalFunction, ...], ...]

    def __post_init__(self):
        _check_square(self.entries)

    @classmethod
    def build(
        cls, n: int, entry: Callable[[int, int], Union[RationalFunction, PolyLike]]
    ) -> "RatMatrix":
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                value = entry(i, j)
                row.append(value if isinstance(value, RationalFunction) else RationalFunction(value))
            rows.append(tuple(row))
        return cls(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: Tuple[int, int]) -> RationalFunction:
        i, j = ij
        return self.entries[i][j]

    def evaluate(self, point: Mapping[VariableId, Scalar]) -> List[List[Fraction]]:
        return [[f.evaluate(point) for f in row] for row in self.entries]
