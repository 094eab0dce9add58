"""Shared runner: compare labelled pairs of sides symbolically or at sampled points."""
import hashlib
import logging
import random
import time
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from critval.core.config import settings
from critval.core.exceptions import BudgetExceededError
from critval.models.polynomial import Polynomial, VariableId, format_rational, term_budget
from critval.schemas.instance import (
    CheckMode,
    CheckName,
    CheckOutcome,
    CheckStatus,
    IdentityInstance,
)
from critval.services.sampling import (
    Point,
    default_point_count,
    derive_seed,
    format_point,
    sample_points,
)

logger = logging.getLogger(__name__)

Sides = List[Tuple[str, Polynomial, Polynomial]]
SideBuilder = Callable[[Optional[Point]], Sides]


def truncate_witness(text: str, limit: Optional[int] = None) -> str:
    """Cut long witnesses, keeping a hash of the full form."""
    limit = limit or settings.WITNESS_MAX_CHARS
    if len(text) <= limit:
        return text
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return f"{text[:limit]} ... [sha256:{digest}]"


def _labelled(label: str, text: str) -> str:
    return f"{label}: {text}" if label else text


def _compare_symbolic(build: SideBuilder) -> Optional[str]:
    for label, lhs, rhs in build(None):
        difference = lhs - rhs
        if not difference.is_zero:
            return truncate_witness(_labelled(label, str(difference)))
    return None


def _compare_at_points(build: SideBuilder, points: Sequence[Point]) -> Optional[str]:
    for point in points:
        for label, lhs, rhs in build(point):
            left, right = lhs.evaluate(point), rhs.evaluate(point)
            if left != right:
                return truncate_witness(_labelled(
                    label,
                    f"{format_point(point)}: lhs={format_rational(left)}, rhs={format_rational(right)}",
                ))
    return None


def run_check(
    name: CheckName,
    instance: IdentityInstance,
    mode: CheckMode,
    build: SideBuilder,
    variables: Sequence[VariableId] = (),
    degree_hint: Optional[int] = None,
    avoid: Iterable[Polynomial] = (),
    budget: Optional[int] = None,
) -> CheckOutcome:
    """Run ``build`` under the term budget and turn the comparison into an outcome.

    ``build(None)`` returns the symbolic sides; ``build(point)`` may specialize
    variables of ``point`` early, and whatever it returns is evaluated at ``point``.
    """
    limit = budget if budget is not None else settings.TERM_BUDGET
    start = time.perf_counter()
    logger.debug(f"{name.value} {instance.label()} {mode.kind.value}: start")
    points_used = None
    try:
        with term_budget(limit):
            if mode.is_symbolic:
                witness = _compare_symbolic(build)
            else:
                points_used = mode.points or default_point_count(degree_hint)
                rng = random.Random(derive_seed(mode.seed, name.value, instance))
                points = sample_points(rng, list(variables), points_used, avoid)
                witness = _compare_at_points(build, points)
    except BudgetExceededError as exc:
        elapsed = (time.perf_counter() - start) * 1000
        logger.warning(f"{name.value} {instance.label()}: skipped, {exc}")
        return CheckOutcome(
            name=name,
            instance=instance,
            mode=mode,
            status=CheckStatus.SKIPPED,
            reason=str(exc),
            points_used=points_used,
            elapsed_ms=elapsed,
        )
    elapsed = (time.perf_counter() - start) * 1000
    status = CheckStatus.PASS if witness is None else CheckStatus.FAIL
    log = logger.info if witness is None else logger.error
    log(f"{name.value} {instance.label()} {mode.kind.value}: {status.value} ({elapsed:.1f} ms)")
    return CheckOutcome(
        name=name,
        instance=instance,
        mode=mode,
        status=status,
        witness=witness,
        points_used=points_used,
        elapsed_ms=elapsed,
    )
