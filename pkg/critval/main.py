"""critval command line: single checks, calibration, critical-point polynomials and grid sweeps."""
import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from critval import __version__
from critval.core.config import settings
from critval.core.exceptions import (
    InvalidInstanceError,
    NoConsistentRuleError,
    ReportFormatError,
)
from critval.models.critical import CriticalSpec
from critval.models.polynomial import format_rational
from critval.schemas.calibration import CalibratedIdentity, SignRule
from critval.schemas.instance import (
    CHECK_DESCRIPTIONS,
    CheckMode,
    CheckName,
    CheckOutcome,
    CheckStatus,
    ModeKind,
    parse_multiplicities,
)
from critval.schemas.report import DEFAULT_CHECKS, SuiteConfig
from critval.schemas.request import (
    CalibrationRequest,
    CheckRequest,
    CritPolyRequest,
    ListRequest,
    ReportRequest,
    RunOptions,
    SuiteRequest,
)
from critval.services.critpoly import (
    build_p,
    critical_values,
    jacobian_at,
    jacobian_direct,
)
from critval.services.linalg import det_cofactor
from critval.services.signs import calibrate_sign_rule
from critval.services.suite import (
    build_report,
    exit_status,
    read_report,
    run_suite,
    write_report,
)
from critval.workers.tasks import CaseTask, run_case

logger = logging.getLogger(__name__)

Request = Union[
    CheckRequest, SuiteRequest, CalibrationRequest, CritPolyRequest, ListRequest, ReportRequest
]

COMMAND_CHECKS = {
    "verify-a": CheckName.THEOREM_A,
    "verify-b": CheckName.THEOREM_B,
    "verify-diff": CheckName.DIFFERENTIAL,
    "verify-region": CheckName.REGION,
    "verify-chain": CheckName.CHAIN,
    "verify-reduction": CheckName.REDUCTION,
    "verify-boundary": CheckName.BOUNDARY,
    "verify-jacobian": CheckName.JACOBIAN_PATHS,
}


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


# Argument types ------------------------------------------------------------

def _multiplicities(text: str) -> Tuple[int, ...]:
    try:
        return tuple(parse_multiplicities(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{text!r}: {e}")


def _n_range(text: str) -> Tuple[int, int]:
    """``3`` or ``1..3``."""
    low, sep, high = text.partition("..")
    try:
        bounds = (int(low), int(high)) if sep else (int(low), int(low))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or a range like 1..3")
    if bounds[0] < 1 or bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"{text!r} is not a non-empty range of positive integers")
    return bounds


def _rationals(text: str) -> Tuple[str, ...]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    try:
        for p in parts:
            Fraction(p)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of rationals")
    if not parts:
        raise argparse.ArgumentTypeError("empty point list")
    return parts


def _checks(text: str) -> List[CheckName]:
    if text.strip() == "all":
        return list(CheckName)
    try:
        return [CheckName(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _sign(text: str) -> SignRule:
    try:
        return SignRule.from_flag(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r}: expected one of i, i+1, n-i")


# Parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critval",
        description="Exact verification of multi-integral and critical-value Jacobian identities.",
    )
    parser.add_argument("--version", action="version", version=f"critval {__version__}")
    parser.add_argument("--list-checks", action="store_true", help="list check ids and exit")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in ModeKind], default=ModeKind.SYMBOLIC.value)
    common.add_argument("--points", type=int, help="evaluation points (evaluate mode)")
    common.add_argument("--seed", type=int, help=f"master seed (default CRITVAL_SEED={settings.SEED})")
    common.add_argument("--budget", type=int, help="max terms of any intermediate polynomial")
    common.add_argument("--json", dest="json_path", metavar="PATH", help="write the report here")
    common.add_argument("--timings", action="store_true", help="record elapsed times in the report")
    common.add_argument("--log-level", help="override CRITVAL_LOG_LEVEL")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--n", type=int)
    instance.add_argument("--a", type=_multiplicities, help="comma-separated multiplicities")
    instance.add_argument("--b", type=int, default=0)

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    both = [instance, common]
    sub.add_parser("verify-a", parents=both, help="multi-integral closed form")
    sub.add_parser("verify-b", parents=both, help="critical-value Jacobian determinant")
    p = sub.add_parser("verify-recurrence", parents=both, help="b -> b+1 recurrence")
    p.add_argument("--level", choices=["value", "integrand"], default="value")
    p = sub.add_parser("verify-diff", parents=both, help="differential identity")
    p.add_argument("--sign", type=_sign)
    p = sub.add_parser("verify-region", parents=both, help="signed region identity")
    p.add_argument("--sign", type=_sign)
    p.add_argument("--max-degree", type=int, default=2)
    p = sub.add_parser("verify-cauchy", parents=[common], help="Cauchy alternant determinant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scaled", action="store_true", help="row-scaled polynomial variant")
    sub.add_parser("verify-chain", parents=both, help="closed-form chain to the Jacobian identity")
    sub.add_parser("verify-reduction", parents=both, help="n -> n-1 change of variables")
    p = sub.add_parser("verify-boundary", parents=both, help="fundamental-theorem boundary term")
    p.add_argument("--i", type=int, help="single index (default: every index)")
    sub.add_parser("verify-jacobian", parents=both, help="direct vs rewritten Jacobian")

    p = sub.add_parser("calibrate-signs", parents=[common], help="sign-rule calibration table")
    p.add_argument(
        "--check",
        choices=[c.value for c in CalibratedIdentity] + ["all"],
        default="all",
    )
    p.add_argument("--n", type=_n_range, default=(1, 4))

    p = sub.add_parser("critpoly", parents=[common], help="p(Z), critical values and Jacobian")
    p.add_argument("--a", type=_multiplicities, required=True)
    p.add_argument("--at", type=_rationals, help="rational critical points")

    p = sub.add_parser("sweep", parents=[common], help="grid suite")
    p.add_argument("--n", type=_n_range, default=(1, 3))
    p.add_argument("--a-max", type=int, default=2)
    p.add_argument("--b-max", type=int, default=2)
    p.add_argument(
        "--checks",
        type=_checks,
        default=list(DEFAULT_CHECKS),
        help="comma-separated check ids, or 'all'",
    )
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--workers", type=int, help="worker processes (default CRITVAL_WORKERS)")

    p = sub.add_parser("report", help="read a report file back and print its summary")
    p.add_argument("path")
    p.add_argument("--log-level", help="override CRITVAL_LOG_LEVEL")
    return parser


def _n_cap(mode: str) -> int:
    return settings.SYMBOLIC_N_CAP if mode == ModeKind.SYMBOLIC.value else settings.EVALUATE_N_CAP


def _common(parser: argparse.ArgumentParser, args: argparse.Namespace) -> dict:
    seed = settings.SEED if args.seed is None else args.seed
    if not 0 <= seed < 2**64:
        parser.error("argument --seed: must be a 64-bit unsigned integer")
    for flag in ("points", "budget"):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            parser.error(f"argument --{flag}: must be positive")
    if args.log_level and not isinstance(logging.getLevelName(args.log_level.upper()), int):
        parser.error(f"argument --log-level: unknown level {args.log_level!r}")
    return dict(
        command=args.command,
        seed=seed,
        timings=args.timings or settings.REPORT_TIMINGS,
        json_path=args.json_path,
        log_level=args.log_level,
    )


def _resolve_instance(parser: argparse.ArgumentParser, args: argparse.Namespace) -> Tuple[int, Tuple[int, ...]]:
    """n is inferred from --a when missing; a length mismatch is a usage error."""
    if args.a is None:
        parser.error("argument --a is required")
    n = len(args.a) if args.n is None else args.n
    if n != len(args.a):
        parser.error(f"argument --a: expected {n} entries for --n {n}, got {len(args.a)}")
    if n < 1:
        parser.error("argument --n: must be positive")
    if n > _n_cap(args.mode):
        parser.error(f"argument --n: n={n} exceeds the {args.mode} cap {_n_cap(args.mode)}")
    if args.b < 0:
        parser.error("argument --b: must be non-negative")
    return n, args.a


def parse_args(argv: Optional[Sequence[str]] = None) -> Request:
    """Parse ``argv`` into a request; usage errors exit with status 2."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_checks:
        return ListRequest(command="list-checks", seed=settings.SEED)
    if args.command is None:
        parser.error("a command is required (or --list-checks)")
    if args.command == "report":
        return ReportRequest(command="report", seed=settings.SEED, path=args.path, log_level=args.log_level)
    options = _common(parser, args)

    try:
        if args.command == "sweep":
            n_min, n_max = args.n
            if n_max > _n_cap(args.mode):
                parser.error(f"argument --n: n_max={n_max} exceeds the {args.mode} cap {_n_cap(args.mode)}")
            for flag in ("a_max", "b_max", "max_degree"):
                if getattr(args, flag) < 0:
                    parser.error(f"argument --{flag.replace('_', '-')}: must be non-negative")
            config = SuiteConfig(
                checks=args.checks,
                n_min=n_min,
                n_max=n_max,
                a_max=args.a_max,
                b_max=args.b_max,
                mode=args.mode,
                points=args.points,
                budget=args.budget or settings.TERM_BUDGET,
                max_degree=args.max_degree,
                output_path=args.json_path,
            )
            return SuiteRequest(config=config, workers=args.workers, **options)

        if args.command == "calibrate-signs":
            identities = (
                list(CalibratedIdentity) if args.check == "all" else [CalibratedIdentity(args.check)]
            )
            low, high = args.n
            return CalibrationRequest(identities=identities, n_values=tuple(range(low, high + 1)), **options)

        if args.command == "critpoly":
            if args.at is not None and len(args.at) != len(args.a):
                parser.error(f"argument --at: expected {len(args.a)} points, got {len(args.at)}")
            return CritPolyRequest(a=args.a, at=args.at, **options)

        if args.command == "verify-cauchy":
            if not 1 <= args.n <= _n_cap(args.mode):
                parser.error(f"argument --n: must be in 1..{_n_cap(args.mode)}")
            check = CheckName.CAUCHY_SCALED if args.scaled else CheckName.CAUCHY
            return CheckRequest(
                check=check, n=args.n, a=(0,) * args.n, mode=args.mode,
                points=args.points, budget=args.budget, **options,
            )

        n, a = _resolve_instance(parser, args)
        if args.command == "verify-recurrence":
            check = CheckName.RECURRENCE_VALUE if args.level == "value" else CheckName.RECURRENCE_INTEGRAND
        else:
            check = COMMAND_CHECKS[args.command]
        index = getattr(args, "i", None)
        if index is not None and not 1 <= index <= n:
            parser.error(f"argument --i: must be in 1..{n}")
        return CheckRequest(
            check=check,
            n=n,
            a=a,
            b=args.b,
            mode=args.mode,
            points=args.points,
            budget=args.budget,
            max_degree=getattr(args, "max_degree", 2),
            sign=getattr(args, "sign", None),
            index=index,
            **options,
        )
    except ValidationError as e:
        parser.error(str(e))


# Commands --------------------------------------------------------------------

def _outcome_text(outcome: CheckOutcome) -> str:
    lines = [
        f"{outcome.name.value} {outcome.instance.label()} [{outcome.mode.kind.value}]: "
        f"{outcome.status.value}"
    ]
    if outcome.witness is not None:
        lines.append(f"  witness: {outcome.witness}")
    if outcome.reason is not None:
        lines.append(f"  reason: {outcome.reason}")
    return "\n".join(lines)


def run_check_request(req: CheckRequest) -> int:
    mode = CheckMode(kind=req.mode, points=req.points, seed=req.seed)
    outcome = run_case(CaseTask(
        check=req.check,
        n=req.n,
        a=req.a,
        b=req.b,
        mode=mode,
        budget=req.budget,
        max_degree=req.max_degree,
        sign=req.sign,
        index=req.index,
    ))
    print(_outcome_text(outcome))
    if req.json_path:
        config = SuiteConfig(
            checks=[req.check],
            n_min=req.n,
            n_max=req.n,
            a_max=max(req.a),
            b_max=req.b,
            mode=req.mode,
            points=req.points,
            budget=req.budget or settings.TERM_BUDGET,
            max_degree=req.max_degree,
        )
        report = build_report(config, req.seed, [outcome], req.timings, outcome.elapsed_ms)
        write_report(report, req.json_path)
    return 1 if outcome.status == CheckStatus.FAIL else 0


def run_sweep_request(req: SuiteRequest) -> int:
    report = run_suite(req.config, seed=req.seed, workers=req.workers, timings=req.timings)
    summary = report.summary
    print(f"pass={summary.passed} fail={summary.failed} skipped={summary.skipped}")
    for case in report.cases:
        if case.witness is not None:
            print(f"{case.check.value} n={case.n} a={case.a} b={case.b}: {case.witness}")
    return exit_status(report)


def run_calibration_request(req: CalibrationRequest) -> int:
    results = []
    for identity in req.identities:
        try:
            result = calibrate_sign_rule(identity, req.n_values)
        except NoConsistentRuleError as e:
            logger.error(f"Calibration of {identity.value} found no passing rule")
            print(f"{identity.value}: {e}")
            return 1
        results.append(result)
        print(f"{identity.value}:")
        for rule, row in result.table.items():
            cells = " ".join(f"n={n}:{'pass' if ok else 'fail'}" for n, ok in row.items())
            print(f"  {rule.value:<12} {cells}")
        chosen = ", ".join(r.value for r in result.passing_rules()) or "none"
        print(f"  consistent: {chosen}")
    if req.json_path:
        payload = [r.model_dump(mode="json") for r in results]
        Path(req.json_path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0 if all(r.passing_rules() for r in results) else 1


def run_critpoly_request(req: CritPolyRequest) -> int:
    if req.at is None:
        spec = CriticalSpec.symbolic(req.a)
        matrix = jacobian_direct(spec)
        det_text = str(det_cofactor(matrix))
        values = [str(v) for v in critical_values(spec)]
    else:
        spec = CriticalSpec.rational(req.a, [Fraction(p) for p in req.at])
        matrix, det = jacobian_at(spec)
        det_text = format_rational(det)
        values = [format_rational(v) for v in critical_values(spec)]
    payload = {
        "a": list(req.a),
        "points": None if req.at is None else list(req.at),
        "p": str(build_p(spec)),
        "critical_values": values,
        "jacobian": matrix.to_text(),
        "det": det_text,
    }
    print(f"p(Z) = {payload['p']}")
    for j, value in enumerate(values, start=1):
        print(f"p(z{j}) = {value}")
    for row in payload["jacobian"]:
        print("J: [" + ", ".join(row) + "]")
    print(f"det J = {det_text}")
    if req.json_path:
        Path(req.json_path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def run_report_request(req: ReportRequest) -> int:
    report = read_report(req.path)
    summary = report.summary
    print(
        f"{req.path}: critval {report.version}, seed {report.seed}, {len(report.cases)} cases: "
        f"pass={summary.passed} fail={summary.failed} skipped={summary.skipped}"
    )
    return exit_status(report)


def list_checks() -> int:
    for name in CheckName:
        print(f"{name.value:<22}{CHECK_DESCRIPTIONS[name]}")
    return 0


def dispatch(req: RunOptions) -> int:
    if isinstance(req, ListRequest):
        return list_checks()
    if isinstance(req, SuiteRequest):
        return run_sweep_request(req)
    if isinstance(req, CalibrationRequest):
        return run_calibration_request(req)
    if isinstance(req, CritPolyRequest):
        return run_critpoly_request(req)
    if isinstance(req, ReportRequest):
        return run_report_request(req)
    return run_check_request(req)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Exit status: 0 ok, 1 failing checks or I/O and report errors, 2 usage errors."""
    try:
        request = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    configure_logging(request.log_level)
    logger.debug(f"{settings.APP_NAME} v{settings.APP_VERSION}: {request.command}")
    try:
        return dispatch(request)
    except (InvalidInstanceError, ValidationError) as e:
        print(f"critval: error: {e}", file=sys.stderr)
        return 2
    except (OSError, ReportFormatError) as e:
        logger.error(f"{request.command} failed: {e}")
        print(f"critval: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
