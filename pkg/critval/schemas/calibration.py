"""Sign-rule schemas."""
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict


class SignRule(str, Enum):
    """Alternating-sign conventions for sums over a 1-based index i."""
    I = "(-1)^i"
    I_PLUS_ONE = "(-1)^(i+1)"
    N_MINUS_I = "(-1)^(n-i)"

    def sign(self, i: int, n: int) -> int:
        if self is SignRule.I:
            exponent = i
        elif self is SignRule.I_PLUS_ONE:
            exponent = i + 1
        else:
            exponent = n - i
        return -1 if exponent % 2 else 1

    @classmethod
    def from_flag(cls, text: str) -> "SignRule":
        """Accept the rule text or the short forms ``i``, ``i+1``, ``n-i``."""
        short = {"i": cls.I, "i+1": cls.I_PLUS_ONE, "n-i": cls.N_MINUS_I}
        key = text.strip().replace(" ", "")
        if key in short:
            return short[key]
        return cls(key)


class CalibratedIdentity(str, Enum):
    """Identities whose alternating-sign convention is calibrated."""
    DIFFERENTIAL = "differential"
    REGION = "region"


class CalibrationResult(BaseModel):
    """Pass/fail table of each candidate rule per n, and the consistent rule if unique."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    check: CalibratedIdentity
    n_values: List[int]
    table: Dict[SignRule, Dict[int, bool]]
    rule: Optional[SignRule] = None
    per_n: Dict[int, List[SignRule]]

    def passing_rules(self) -> List[SignRule]:
        return [r for r, row in self.table.items() if all(row.values())]
