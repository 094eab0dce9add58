"""Suite configuration and report schemas."""
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from critval.core.config import settings
from critval.schemas.instance import CheckName, CheckOutcome, CheckStatus, ModeKind

DEFAULT_CHECKS = (CheckName.THEOREM_A, CheckName.THEOREM_B)


class SuiteConfig(BaseModel):
    """Grid suite configuration; echoed into the report without the output path."""
    checks: List[CheckName] = Field(default_factory=lambda: list(DEFAULT_CHECKS), min_length=1)
    n_min: int = Field(default=1, ge=1)
    n_max: int = Field(default=3, ge=1)
    a_max: int = Field(default=2, ge=0)
    b_max: int = Field(default=2, ge=0)
    mode: ModeKind = ModeKind.SYMBOLIC
    points: Optional[int] = Field(default=None, ge=1)
    budget: int = Field(default_factory=lambda: settings.TERM_BUDGET, ge=1)
    max_degree: int = Field(default=2, ge=0)
    output_path: Optional[str] = Field(default=None, exclude=True)

    model_config = ConfigDict(extra="forbid", json_schema_extra={
        "example": {
            "checks": ["theorem-a", "theorem-b"],
            "n_min": 1,
            "n_max": 3,
            "a_max": 2,
            "b_max": 2,
            "mode": "symbolic",
            "budget": 250000,
            "max_degree": 2,
        }
    })

    @model_validator(mode="after")
    def check_ranges(self):
        if self.n_min > self.n_max:
            raise ValueError(f"n range {self.n_min}..{self.n_max} is empty")
        cap = settings.SYMBOLIC_N_CAP if self.mode == ModeKind.SYMBOLIC else settings.EVALUATE_N_CAP
        if self.n_max > cap:
            raise ValueError(f"n_max={self.n_max} exceeds the {self.mode.value} cap {cap}")
        return self


class CaseBase(BaseModel):
    """Fields shared by every case record."""
    check: CheckName
    n: int = Field(..., ge=1)
    a: List[int]
    b: int = Field(..., ge=0)


class CaseRecord(CaseBase):
    """One check on one instance, as written into a report."""
    mode: ModeKind
    points: Optional[int] = None
    status: CheckStatus
    witness: Optional[str] = None
    reason: Optional[str] = None
    elapsed_ms: int = Field(default=0, ge=0)

    model_config = ConfigDict(extra="forbid")

    @classmethod
    def from_outcome(cls, outcome: CheckOutcome, timings: bool = False) -> "CaseRecord":
        inst = outcome.instance
        return cls(
            check=outcome.name,
            n=inst.n,
            a=list(inst.a),
            b=inst.b,
            mode=outcome.mode.kind,
            points=outcome.points_used,
            status=outcome.status,
            witness=outcome.witness,
            reason=outcome.reason,
            elapsed_ms=round(outcome.elapsed_ms) if timings else 0,
        )

    def sort_key(self) -> Tuple[str, Tuple[int, Tuple[int, ...], int]]:
        return (self.check.value, (self.n, tuple(self.a), self.b))


class Summary(BaseModel):
    """Status counts; serialized as pass / fail / skipped."""
    passed: int = Field(default=0, ge=0, alias="pass")
    failed: int = Field(default=0, ge=0, alias="fail")
    skipped: int = Field(default=0, ge=0)

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    @classmethod
    def of(cls, cases: List[CaseRecord]) -> "Summary":
        counts = {status: 0 for status in CheckStatus}
        for case in cases:
            counts[case.status] += 1
        return cls(
            passed=counts[CheckStatus.PASS],
            failed=counts[CheckStatus.FAIL],
            skipped=counts[CheckStatus.SKIPPED],
        )


class SuiteReport(BaseModel):
    """Versioned report document; byte-identical for identical (version, config, seed)."""
    version: str
    seed: int = Field(..., ge=0, lt=2**64)
    config: SuiteConfig
    cases: List[CaseRecord] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)
    elapsed_ms: int = Field(default=0, ge=0)

    model_config = ConfigDict(extra="forbid")

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0
