"""Seeded sampling of distinct nonzero rational evaluation points."""
import hashlib
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from critval.core.config import settings
from critval.models.polynomial import Polynomial, VariableId, format_rational
from critval.schemas.instance import IdentityInstance

Point = Dict[VariableId, Fraction]

MAX_RESAMPLES = 1000


def derive_seed(master: int, check: str, instance: IdentityInstance) -> int:
    """Per-check seed from (master seed, check name, instance); schedule-independent."""
    key = f"{master}|{check}|{instance.n}|{','.join(map(str, instance.a))}|{instance.b}"
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "big")


def _random_rational(rng: random.Random, num_bound: int, den_bound: int) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-num_bound, num_bound)
    return Fraction(num, rng.randint(1, den_bound))


def sample_point(
    rng: random.Random,
    variables: Sequence[VariableId],
    avoid: Iterable[Polynomial] = (),
    num_bound: Optional[int] = None,
    den_bound: Optional[int] = None,
) -> Point:
    """Distinct nonzero rationals for ``variables``; no polynomial in ``avoid`` vanishes."""
    num_bound = num_bound or settings.EVAL_NUM_BOUND
    den_bound = den_bound or settings.EVAL_DEN_BOUND
    guards = list(avoid)
    for _ in range(MAX_RESAMPLES):
        point: Point = {}
        used = set()
        for v in variables:
            value = _random_rational(rng, num_bound, den_bound)
            while value in used:
                value = _random_rational(rng, num_bound, den_bound)
            used.add(value)
            point[v] = value
        if all(g.evaluate(point) != 0 for g in guards):
            return point
    raise RuntimeError(f"could not sample a point avoiding {len(guards)} denominators")


def sample_points(
    rng: random.Random,
    variables: Sequence[VariableId],
    count: int,
    avoid: Iterable[Polynomial] = (),
) -> List[Point]:
    guards = list(avoid)
    return [sample_point(rng, variables, guards) for _ in range(count)]


def default_point_count(degree_hint: Optional[int] = None) -> int:
    """max(MIN_EVAL_POINTS, degree + 1)."""
    if degree_hint is None:
        return settings.MIN_EVAL_POINTS
    return max(settings.MIN_EVAL_POINTS, degree_hint + 1)


def format_point(point: Mapping[VariableId, Fraction]) -> str:
    return ", ".join(f"{v.name}={format_rational(point[v])}" for v in sorted(point))
