"""``devpatch unroll``: develop the patch into the plane."""

import argparse
import logging
from pathlib import Path
from typing import Tuple

from devpatch.patch import development_to_csv, development_to_obj

from ..config import Settings
from ..exit_codes import ExitCode
from ..models.schemas import UnrollMetrics, VerificationReport
from ..storage.file_storage import file_storage
from .common import (
    add_curve_arguments,
    branch_summary,
    curvature_summary,
    load_branch,
    load_inputs,
    parse_grid,
    pipeline_from,
)

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("unroll", help="flatten a developable patch into the plane")
    add_curve_arguments(parser, with_branch=True)
    parser.add_argument("--grid", type=parse_grid, default=None, help="development grid NT,NV (default 65,9)")
    parser.add_argument("--tol-curvature", type=float, default=None, help="normalised curvature tolerance")
    parser.add_argument(
        "--out", type=Path, default=None, help="directory for development.obj and development.csv"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> Tuple[ExitCode, VerificationReport]:
    c, d = load_inputs(file_storage, args)
    branch = load_branch(file_storage, args, c, d)
    pipeline = pipeline_from(args, settings)
    result = pipeline.unroll(c, d, branch)

    out_dir = Path(args.out or settings.output_dir)
    outputs = [
        str(file_storage.write_text(out_dir / "development.obj", development_to_obj(result.development))),
        str(file_storage.write_text(out_dir / "development.csv", development_to_csv(result.development))),
    ]
    metrics = result.metrics.to_dict()
    report = VerificationReport(
        command="unroll",
        exit_code=int(ExitCode.OK),
        message=f"edge-length error {result.metrics.edge_length_error:.3e}",
        branch_count=1,
        branches=[branch_summary(0, branch, args.branch_file)],
        max_residual=branch.max_residual,
        curvature=curvature_summary(result.curvature),
        unroll=UnrollMetrics(**metrics),
        outputs=outputs,
        timings={"unroll": result.processing_time_seconds},
    )
    return ExitCode.OK, report
