"""Entry point of the devpatch command line."""

import argparse
import logging
import sys
import time
import uuid
from importlib.metadata import PackageNotFoundError, version as pkg_version
from typing import List, Optional

import structlog

from devpatch.errors import (
    DevpatchError,
    NonDevelopableError,
    RegressionError,
)

from .commands import COMMANDS
from .config import get_settings
from .exit_codes import ExitCode
from .logging_config import setup_logging
from .models.schemas import VerificationReport
from .storage.file_storage import file_storage

logger = logging.getLogger(__name__)


def _get_version() -> str:
    try:
        return pkg_version("developable-patches")
    except PackageNotFoundError:
        return "1.0.0"


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's default 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(int(ExitCode.INPUT_ERROR), f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="devpatch",
        description="Developable surface patches bounded by two NURBS curves.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_get_version()}")
    parser.add_argument("--log-level", default=None, help="override DEVPATCH_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.add_parser(subparsers)
    return parser


def _failure(command: str, code: ExitCode, message: str) -> VerificationReport:
    return VerificationReport(command=command, exit_code=int(code), message=message)


def _execute(args: argparse.Namespace, settings):
    try:
        return args.handler(args, settings)
    except RegressionError as e:
        return ExitCode.NO_MONOTONE_BRANCH, _failure(args.command, ExitCode.NO_MONOTONE_BRANCH, str(e))
    except NonDevelopableError as e:
        report = _failure(args.command, ExitCode.CURVATURE_FAILURE, str(e))
        if e.max_curvature is not None:
            report.message = f"{e} (max |K| normalised {e.max_curvature:.6e})"
        return ExitCode.CURVATURE_FAILURE, report
    except (DevpatchError, ValueError) as e:
        return ExitCode.INPUT_ERROR, _failure(args.command, ExitCode.INPUT_ERROR, str(e))
    except Exception as e:
        logger.exception("Unhandled exception: %s", e)
        return ExitCode.INPUT_ERROR, _failure(args.command, ExitCode.INPUT_ERROR, "An unexpected error occurred.")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    try:
        setup_logging(log_level=args.log_level or settings.log_level, log_format=settings.log_format)
    except ValueError as e:
        print(f"devpatch: {e}", file=sys.stderr)
        return int(ExitCode.INPUT_ERROR)

    run_id = uuid.uuid4().hex[:12]
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=run_id, command=args.command)
    log = structlog.get_logger()
    log.info("command_started", argv=argv if argv is not None else sys.argv[1:])

    start_time = time.perf_counter()
    code, report = _execute(args, settings)
    duration_ms = round((time.perf_counter() - start_time) * 1000, 2)
    log.info("command_completed", exit_code=int(code), duration_ms=duration_ms)

    if code != ExitCode.OK and report.message:
        print(f"devpatch {args.command}: {report.message}", file=sys.stderr)
    if report.offending_t:
        print("offending t: " + ", ".join(repr(t) for t in report.offending_t), file=sys.stderr)

    text = report.to_json()
    if args.report is not None:
        file_storage.write_text(args.report, text + "\n")
    sys.stdout.write(text + "\n")
    return int(code)


if __name__ == "__main__":
    sys.exit(main())
