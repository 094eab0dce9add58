"""Instance, mode and outcome schemas."""
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class IdentityInstance(BaseModel):
    """Parameters (n, a, b) of a multi-integral instance."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(..., ge=1)
    a: Tuple[int, ...]
    b: int = Field(default=0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def infer_n(cls, data):
        if isinstance(data, dict) and data.get("n") is None and data.get("a") is not None:
            data = {**data, "n": len(data["a"])}
        return data

    @model_validator(mode="after")
    def check_multiplicities(self):
        if len(self.a) != self.n:
            raise ValueError(f"a has {len(self.a)} entries, expected n={self.n}")
        if any(ai < 0 for ai in self.a):
            raise ValueError("multiplicities must be non-negative")
        return self

    @property
    def abar(self) -> int:
        """Sum of the entries at odd 1-based positions."""
        return sum(self.a[0::2])

    @property
    def a_sum(self) -> int:
        return sum(self.a)

    def bumped(self, i: int) -> "IdentityInstance":
        """Copy with a_i + 1 (1-based i)."""
        a = list(self.a)
        a[i - 1] += 1
        return IdentityInstance(n=self.n, a=tuple(a), b=self.b)

    def with_b(self, b: int) -> "IdentityInstance":
        return IdentityInstance(n=self.n, a=self.a, b=b)

    def label(self) -> str:
        return f"n={self.n} a=({','.join(map(str, self.a))}) b={self.b}"

    def sort_key(self) -> Tuple[int, Tuple[int, ...], int]:
        return (self.n, self.a, self.b)


class ModeKind(str, Enum):
    """How an identity is checked."""
    SYMBOLIC = "symbolic"
    EVALUATE = "evaluate"


class CheckMode(BaseModel):
    """Symbolic comparison, or comparison at seeded random rational points."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ModeKind = ModeKind.SYMBOLIC
    points: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @classmethod
    def symbolic(cls) -> "CheckMode":
        return cls(kind=ModeKind.SYMBOLIC)

    @classmethod
    def evaluate(cls, points: Optional[int] = None, seed: int = 0) -> "CheckMode":
        return cls(kind=ModeKind.EVALUATE, points=points, seed=seed)

    @property
    def is_symbolic(self) -> bool:
        return self.kind == ModeKind.SYMBOLIC


class CheckStatus(str, Enum):
    """Check outcome status."""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckName(str, Enum):
    """Every check reachable from the command line."""
    THEOREM_A = "theorem-a"
    THEOREM_B = "theorem-b"
    RECURRENCE_VALUE = "recurrence-value"
    RECURRENCE_INTEGRAND = "recurrence-integrand"
    DIFFERENTIAL = "differential"
    REGION = "region"
    CAUCHY = "cauchy"
    CAUCHY_SCALED = "cauchy-scaled"
    CHAIN = "chain"
    REDUCTION = "reduction"
    BOUNDARY = "boundary"
    JACOBIAN_PATHS = "jacobian-paths"


CHECK_DESCRIPTIONS = {
    CheckName.THEOREM_A: "multi-integral closed form (theorem A)",
    CheckName.THEOREM_B: "critical-value Jacobian determinant (theorem B)",
    CheckName.RECURRENCE_VALUE: "b -> b+1 recurrence, closed-form values",
    CheckName.RECURRENCE_INTEGRAND: "b -> b+1 recurrence, unintegrated integrand",
    CheckName.DIFFERENTIAL: "differential identity behind the base-zero step",
    CheckName.REGION: "signed region identity on a monomial basis and the shifted-box form",
    CheckName.CAUCHY: "Cauchy alternant determinant vs closed form",
    CheckName.CAUCHY_SCALED: "row-scaled alternant determinant vs closed-form numerator",
    CheckName.CHAIN: "closed-form simplification from theorem A to theorem B",
    CheckName.REDUCTION: "change of variables reducing n to n-1",
    CheckName.BOUNDARY: "fundamental-theorem boundary term",
    CheckName.JACOBIAN_PATHS: "direct and rewritten Jacobian constructions agree",
}


class CheckOutcome(BaseModel):
    """Result of one check on one instance."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: CheckName
    instance: IdentityInstance
    mode: CheckMode
    status: CheckStatus
    witness: Optional[str] = None
    reason: Optional[str] = None
    points_used: Optional[int] = None
    elapsed_ms: float = 0.0

    @model_validator(mode="after")
    def witness_iff_fail(self):
        if (self.status == CheckStatus.FAIL) != (self.witness is not None):
            raise ValueError("a witness is present exactly when the check fails")
        return self

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def sort_key(self) -> Tuple[str, Tuple[int, Tuple[int, ...], int]]:
        return (self.name.value, self.instance.sort_key())


def parse_multiplicities(text: str) -> List[int]:
    """Parse a comma-separated multiplicity list such as ``0,1,2``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty multiplicity list")
    values = [int(p) for p in parts]
    if any(v < 0 for v in values):
        raise ValueError("multiplicities must be non-negative")
    return values
