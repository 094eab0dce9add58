"""Parsed command-line requests."""
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from critval.schemas.calibration import CalibratedIdentity, SignRule
from critval.schemas.instance import CheckName, ModeKind
from critval.schemas.report import SuiteConfig


class RunOptions(BaseModel):
    """Options shared by every command."""
    command: str
    seed: int = Field(..., ge=0, lt=2**64)
    timings: bool = False
    json_path: Optional[str] = None
    log_level: Optional[str] = None

    model_config = ConfigDict(frozen=True, extra="forbid")


class CheckRequest(RunOptions):
    """A single check on a single instance."""
    check: CheckName
    n: int = Field(..., ge=1)
    a: Tuple[int, ...]
    b: int = Field(default=0, ge=0)
    mode: ModeKind = ModeKind.SYMBOLIC
    points: Optional[int] = Field(default=None, ge=1)
    budget: Optional[int] = Field(default=None, ge=1)
    max_degree: int = Field(default=2, ge=0)
    sign: Optional[SignRule] = None
    index: Optional[int] = Field(default=None, ge=1)


class SuiteRequest(RunOptions):
    """A grid sweep."""
    config: SuiteConfig
    workers: Optional[int] = Field(default=None, ge=1)


class CalibrationRequest(RunOptions):
    identities: List[CalibratedIdentity]
    n_values: Tuple[int, ...] = (1, 2, 3, 4)


class CritPolyRequest(RunOptions):
    """Build p(Z) for the given multiplicities, symbolic or at rational points."""
    a: Tuple[int, ...]
    at: Optional[Tuple[str, ...]] = None


class ListRequest(RunOptions):
    pass


class ReportRequest(RunOptions):
    """Read back a report file and print its summary."""
    path: str
