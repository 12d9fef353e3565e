"""Helpers shared by the devpatch commands."""

import argparse
from pathlib import Path
from typing import Optional, Tuple

from devpatch.factory import build_pipeline
from devpatch.models.entities import CurvatureProfile, CurvePairClassification, ReparamBranch
from devpatch.pipeline import DevelopabilityPipeline
from devpatch.roots import annotate_branch

from ..config import Settings
from ..models.schemas import BranchSummary, ClassificationSummary, CurvatureSummary
from ..storage.file_storage import FileStorage


def parse_grid(text: str) -> Tuple[int, int]:
    """``NT,NV`` -> (nt, nv), both at least 2."""
    try:
        nt, nv = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like NT,NV, got {text!r}")
    if nt < 2 or nv < 2:
        raise argparse.ArgumentTypeError(f"grid needs NT >= 2 and NV >= 2, got {text!r}")
    return nt, nv


def add_curve_arguments(parser: argparse.ArgumentParser, with_branch: bool = False) -> None:
    parser.add_argument("c_file", help="curve c (JSON)")
    parser.add_argument("d_file", help="curve d (JSON)")
    if with_branch:
        parser.add_argument("branch_file", help="branch CSV with header t,T,dT")
    parser.add_argument("--report", type=Path, default=None, help="also write the JSON report here")


def pipeline_from(args: argparse.Namespace, settings: Settings) -> DevelopabilityPipeline:
    """Pipeline with command-line flags overriding settings."""

    def pick(name: str, fallback):
        value = getattr(args, name, None)
        return fallback if value is None else value

    return build_pipeline(
        samples=pick("samples", settings.samples),
        refine_levels=settings.refine_levels,
        refine_step=settings.refine_step,
        grid=pick("grid", settings.grid),
        tol_residual=pick("tol_residual", settings.tol_residual),
        tol_curvature=pick("tol_curvature", settings.tol_curvature),
        tol_isometry=settings.tol_isometry,
        tol_planarity=settings.tol_planarity,
        workers=settings.workers,
    )


def load_inputs(storage: FileStorage, args: argparse.Namespace):
    return storage.load_curve(args.c_file), storage.load_curve(args.d_file)


def load_branch(storage: FileStorage, args: argparse.Namespace, c, d) -> ReparamBranch:
    ts, Ts, dTs = storage.read_branch(args.branch_file)
    return annotate_branch(c, d, ts, Ts, dTs)


def classification_summary(classification: CurvePairClassification) -> ClassificationSummary:
    return ClassificationSummary(**classification.to_dict())


def branch_summary(index: int, branch: ReparamBranch, file: Optional[str] = None) -> BranchSummary:
    return BranchSummary(index=index, file=file, **branch.to_dict())


def curvature_summary(profile: CurvatureProfile) -> CurvatureSummary:
    return CurvatureSummary(**profile.to_dict())
