"""Grid suites: build the case list, run it, and read or write the report."""
import itertools
import json
import logging
import time
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

from pydantic import ValidationError

from critval import __version__
from critval.core.config import settings
from critval.core.exceptions import ReportFormatError
from critval.schemas.instance import CheckMode, CheckName, CheckOutcome
from critval.schemas.report import CaseRecord, SuiteConfig, SuiteReport, Summary
from critval.workers.pool import run_tasks
from critval.workers.tasks import CaseTask

logger = logging.getLogger(__name__)

# checks that ignore b, or need every a_i >= 1, or need n >= 2
B_INDEPENDENT = frozenset({
    CheckName.THEOREM_B,
    CheckName.DIFFERENTIAL,
    CheckName.REGION,
    CheckName.CHAIN,
    CheckName.REDUCTION,
    CheckName.BOUNDARY,
    CheckName.JACOBIAN_PATHS,
})
POSITIVE_A = frozenset({CheckName.THEOREM_B, CheckName.CHAIN, CheckName.JACOBIAN_PATHS})
NEEDS_TWO = frozenset({CheckName.REGION, CheckName.REDUCTION})
ALTERNANT = frozenset({CheckName.CAUCHY, CheckName.CAUCHY_SCALED})


def _instances(check: CheckName, cfg: SuiteConfig) -> Iterator[Tuple[int, Tuple[int, ...], int]]:
    low = 1 if check in POSITIVE_A else 0
    n_low = max(cfg.n_min, 2) if check in NEEDS_TWO else cfg.n_min
    b_values = [0] if check in B_INDEPENDENT or check in ALTERNANT else range(cfg.b_max + 1)
    for n in range(n_low, cfg.n_max + 1):
        if check in ALTERNANT:
            yield n, (0,) * n, 0
            continue
        for a in itertools.product(range(low, cfg.a_max + 1), repeat=n):
            for b in b_values:
                yield n, a, b


def grid_tasks(cfg: SuiteConfig, seed: int) -> List[CaseTask]:
    mode = CheckMode(kind=cfg.mode, points=cfg.points, seed=seed)
    tasks = []
    for check in cfg.checks:
        for n, a, b in _instances(check, cfg):
            tasks.append(CaseTask(
                check=check,
                n=n,
                a=a,
                b=b,
                mode=mode,
                budget=cfg.budget,
                max_degree=cfg.max_degree,
            ))
    return tasks


def build_report(
    cfg: SuiteConfig,
    seed: int,
    outcomes: List[CheckOutcome],
    timings: bool = False,
    elapsed_ms: float = 0.0,
) -> SuiteReport:
    cases = sorted(
        (CaseRecord.from_outcome(outcome, timings) for outcome in outcomes),
        key=lambda case: case.sort_key(),
    )
    return SuiteReport(
        version=__version__,
        seed=seed,
        config=cfg.model_copy(update={"output_path": None}),
        cases=cases,
        summary=Summary.of(cases),
        elapsed_ms=round(elapsed_ms) if timings else 0,
    )


def run_suite(
    cfg: SuiteConfig,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    timings: Optional[bool] = None,
) -> SuiteReport:
    """Run every grid case of every requested check and write the report if a path is set."""
    seed = settings.SEED if seed is None else seed
    timings = settings.REPORT_TIMINGS if timings is None else timings
    tasks = grid_tasks(cfg, seed)
    logger.info(f"Suite: {len(tasks)} cases, checks={[c.value for c in cfg.checks]}, seed={seed}")
    start = time.perf_counter()
    outcomes = run_tasks(tasks, workers)
    elapsed = (time.perf_counter() - start) * 1000
    report = build_report(cfg, seed, outcomes, timings, elapsed)
    summary = report.summary
    logger.info(
        f"Suite done in {elapsed:.0f} ms: {summary.passed} pass, "
        f"{summary.failed} fail, {summary.skipped} skipped"
    )
    if cfg.output_path:
        write_report(report, cfg.output_path)
    return report


OPTIONAL_CASE_FIELDS = ("witness", "reason")


def report_json(report: SuiteReport) -> str:
    """Stable JSON text; witness and reason are omitted when absent, other nulls are kept."""
    data = report.model_dump(mode="json", by_alias=True)
    for case in data["cases"]:
        for key in OPTIONAL_CASE_FIELDS:
            if case[key] is None:
                del case[key]
    return json.dumps(data, indent=2) + "\n"


def write_report(report: SuiteReport, path: Union[str, Path]) -> None:
    try:
        Path(path).write_text(report_json(report), encoding="utf-8")
    except OSError as e:
        logger.error(f"Could not write report to {path}: {e}")
        raise
    logger.info(f"Report written to {path}")


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(p) for p in item["loc"]) or "<document>"
        parts.append(f"{loc}: {item['msg']}")
    return "; ".join(parts)


def read_report(path: Union[str, Path]) -> SuiteReport:
    """Parse a report; unknown fields and malformed JSON raise ReportFormatError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        logger.error(f"Report {path} is not UTF-8")
        raise ReportFormatError(str(path), f"not valid UTF-8: {e}") from e
    try:
        return SuiteReport.model_validate_json(text)
    except ValidationError as e:
        logger.error(f"Malformed report {path}")
        raise ReportFormatError(str(path), _describe(e)) from e


def exit_status(report: SuiteReport) -> int:
    """0 iff nothing failed; skipped cases do not fail a suite."""
    return 0 if report.ok else 1
