"""Suite case tasks: one picklable record per (check, instance), one dispatcher."""
import logging
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from critval.schemas.calibration import SignRule
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome, IdentityInstance
from critval.services.critpoly import verify_jacobian_paths, verify_theorem_b
from critval.services.linalg import verify_cauchy
from critval.services.recurrence import RecurrenceLevel, verify_recurrence
from critval.services.reduction import (
    a_implies_b_chain_check,
    boundary_term_check,
    reduction_step_check,
)
from critval.services.signs import region_identity_check, verify_differential
from critval.services.theorem_a import verify_theorem_a

logger = logging.getLogger(__name__)


class CaseTask(BaseModel):
    """Everything a worker needs to run one case; a pure function of this record."""
    check: CheckName
    n: int = Field(..., ge=1)
    a: Tuple[int, ...]
    b: int = Field(default=0, ge=0)
    mode: CheckMode
    budget: Optional[int] = Field(default=None, ge=1)
    max_degree: int = Field(default=2, ge=0)
    sign: Optional[SignRule] = None
    index: Optional[int] = Field(default=None, ge=1)

    model_config = ConfigDict(frozen=True, extra="forbid")

    @property
    def instance(self) -> IdentityInstance:
        return IdentityInstance(n=self.n, a=self.a, b=self.b)


def run_case(task: CaseTask) -> CheckOutcome:
    """Dispatch ``task`` to the check it names."""
    check, n, a, mode, budget = task.check, task.n, task.a, task.mode, task.budget
    if check == CheckName.THEOREM_A:
        return verify_theorem_a(task.instance, mode, budget)
    if check == CheckName.THEOREM_B:
        return verify_theorem_b(n, a, mode, budget)
    if check == CheckName.RECURRENCE_VALUE:
        return verify_recurrence(task.instance, RecurrenceLevel.VALUE, mode, budget=budget)
    if check == CheckName.RECURRENCE_INTEGRAND:
        return verify_recurrence(task.instance, RecurrenceLevel.INTEGRAND, mode, budget=budget)
    if check == CheckName.DIFFERENTIAL:
        return verify_differential(n, a, task.sign, mode, budget)
    if check == CheckName.REGION:
        return region_identity_check(n, a, task.max_degree, task.sign, mode, budget)
    if check == CheckName.CAUCHY:
        return verify_cauchy(n, mode, False, budget)
    if check == CheckName.CAUCHY_SCALED:
        return verify_cauchy(n, mode, True, budget)
    if check == CheckName.CHAIN:
        return a_implies_b_chain_check(n, a, mode, budget)
    if check == CheckName.REDUCTION:
        return reduction_step_check(n, a, mode, budget)
    if check == CheckName.BOUNDARY:
        return boundary_term_check(n, a, task.index, mode, budget)
    if check == CheckName.JACOBIAN_PATHS:
        return verify_jacobian_paths(n, a, mode, budget)
    raise ValueError(f"unknown check {check}")
