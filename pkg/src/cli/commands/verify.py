"""``devpatch verify``: recompute residuals and curvature of a branch file."""

import argparse
import logging
from typing import Tuple

from ..config import Settings
from ..exit_codes import ExitCode
from ..models.schemas import VerificationReport
from ..storage.file_storage import file_storage
from .common import (
    add_curve_arguments,
    branch_summary,
    classification_summary,
    curvature_summary,
    load_inputs,
    parse_grid,
    pipeline_from,
)

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="check a branch file against the condition")
    add_curve_arguments(parser, with_branch=True)
    parser.add_argument("--grid", type=parse_grid, default=None, help="curvature grid NT,NV (default 65,9)")
    parser.add_argument("--tol-residual", type=float, default=None, help="normalised residual tolerance")
    parser.add_argument("--tol-curvature", type=float, default=None, help="normalised curvature tolerance")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> Tuple[ExitCode, VerificationReport]:
    c, d = load_inputs(file_storage, args)
    ts, Ts, dTs = file_storage.read_branch(args.branch_file)
    pipeline = pipeline_from(args, settings)
    result = pipeline.verify(c, d, ts, Ts, dTs)

    if result.passed:
        code, message = ExitCode.OK, "every sample satisfies the residual tolerance"
    else:
        code = ExitCode.RESIDUAL_VIOLATION
        message = f"{len(result.offending_t)} sample(s) exceed residual tolerance {pipeline.tol_residual:.1e}"
    if result.curvature_passed is False:
        message += f"; max normalised |K| exceeds {pipeline.tol_curvature:.1e}"

    report = VerificationReport(
        command="verify",
        exit_code=int(code),
        message=message,
        classification=classification_summary(pipeline.classify(c, d)),
        branch_count=1,
        branches=[branch_summary(0, result.branch, args.branch_file)],
        max_residual=float(result.residuals.max()),
        grid_residual=result.grid_residual,
        offending_t=result.offending_t,
        curvature=curvature_summary(result.curvature) if result.curvature else None,
        curvature_passed=result.curvature_passed,
        timings={"verify": result.processing_time_seconds},
    )
    return code, report
