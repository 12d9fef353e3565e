"""``devpatch export``: tessellate the patch of a branch to OBJ."""

import argparse
import logging
import time
from pathlib import Path
from typing import Tuple

from devpatch.patch import mesh_to_obj

from ..config import Settings
from ..exit_codes import ExitCode
from ..models.schemas import VerificationReport
from ..storage.file_storage import file_storage
from .common import (
    add_curve_arguments,
    branch_summary,
    load_branch,
    load_inputs,
    parse_grid,
    pipeline_from,
)

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("export", help="write the patch of a branch as a triangle mesh")
    add_curve_arguments(parser, with_branch=True)
    parser.add_argument("--format", choices=["obj"], default="obj", help="mesh format")
    parser.add_argument("--grid", type=parse_grid, default=None, help="mesh grid NT,NV (default 65,9)")
    parser.add_argument(
        "--allow-regression", action="store_true", help="export even if the branch is not monotone"
    )
    parser.add_argument("--output", type=Path, default=Path("patch.obj"), help="mesh file (default patch.obj)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> Tuple[ExitCode, VerificationReport]:
    start_time = time.time()
    c, d = load_inputs(file_storage, args)
    branch = load_branch(file_storage, args, c, d)
    pipeline = pipeline_from(args, settings)
    mesh = pipeline.export(c, d, branch, allow_regression=args.allow_regression)
    path = file_storage.write_text(args.output, mesh_to_obj(mesh))

    report = VerificationReport(
        command="export",
        exit_code=int(ExitCode.OK),
        message=f"wrote {len(mesh.vertices)} vertices and {len(mesh.faces)} faces",
        branch_count=1,
        branches=[branch_summary(0, branch, args.branch_file)],
        max_residual=branch.max_residual,
        mesh={"nt": mesh.grid[0], "nv": mesh.grid[1], "vertices": len(mesh.vertices), "faces": len(mesh.faces)},
        outputs=[str(path)],
        timings={"export": time.time() - start_time},
    )
    return ExitCode.OK, report
