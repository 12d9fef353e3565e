"""``devpatch solve``: find reparametrisation branches and write them as CSV."""

import argparse
import logging
from pathlib import Path
from typing import Tuple

from ..config import Settings
from ..exit_codes import ExitCode
from ..models.schemas import VerificationReport
from ..storage.file_storage import file_storage
from .common import (
    add_curve_arguments,
    branch_summary,
    classification_summary,
    load_inputs,
    pipeline_from,
)

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("solve", help="solve the developability condition for a curve pair")
    add_curve_arguments(parser)
    parser.add_argument("--samples", type=int, default=None, help="uniform t samples (default 257)")
    parser.add_argument("--tol-residual", type=float, default=None, help="normalised residual tolerance")
    parser.add_argument("--out", type=Path, default=None, help="directory for branch_<k>.csv files")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> Tuple[ExitCode, VerificationReport]:
    c, d = load_inputs(file_storage, args)
    pipeline = pipeline_from(args, settings)
    result = pipeline.solve(c, d)

    out_dir = args.out or settings.output_dir
    summaries, outputs = [], []
    for k, branch in enumerate(result.branches):
        path = file_storage.write_text(
            file_storage.branch_path(k, out_dir), file_storage.branch_to_csv(branch)
        )
        outputs.append(str(path))
        summaries.append(branch_summary(k, branch, str(path)))

    monotone = result.monotone_branches
    if monotone:
        code, message = ExitCode.OK, f"{len(monotone)} monotone branch(es) of {len(result.branches)}"
    elif result.branches:
        code, message = ExitCode.NO_MONOTONE_BRANCH, "no monotone branch; every solution has a regression area"
    else:
        code, message = ExitCode.NO_MONOTONE_BRANCH, "the developability condition has no real solution"

    report = VerificationReport(
        command="solve",
        exit_code=int(code),
        message=message,
        classification=classification_summary(result.classification),
        observed_degree=result.observed_degree,
        degree_bound=result.degree_bound,
        branch_count=len(result.branches),
        branches=summaries,
        max_residual=max((b.max_residual for b in result.branches), default=None),
        outputs=outputs,
        timings={"solve": result.processing_time_seconds},
    )
    return code, report
