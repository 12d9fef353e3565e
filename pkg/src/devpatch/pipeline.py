"""Main developable patch pipeline orchestrator."""

import logging
import time
from typing import Optional, Tuple

import numpy as np

from .condition import condition_polynomials, degree_bound, normalised_residual
from .curves import DEFAULT_PLANARITY_TOL, NurbsCurve, classify_pair
from .errors import NonDevelopableError, RegressionError
from .models.entities import (
    CurvePairClassification,
    ReparamBranch,
    SolveResult,
    TriangleMesh,
    UnrollResult,
    VerifyResult,
)
from .patch import (
    DevelopablePatch,
    gaussian_curvature_profile,
    isometry_metrics,
    tessellate,
    unroll,
)
from .roots import (
    DEFAULT_REFINE_LEVELS,
    DEFAULT_REFINE_STEP,
    DEFAULT_SAMPLES,
    annotate_branch,
    default_samples,
    trace_branches,
)

logger = logging.getLogger(__name__)

# t values at which the observed condition degree is measured
DEGREE_PROBES = 21


class DevelopabilityPipeline:
    """Orchestrates classify -> condition -> roots -> patch for a curve pair."""

    def __init__(
        self,
        samples: int = DEFAULT_SAMPLES,
        refine_levels: int = DEFAULT_REFINE_LEVELS,
        refine_step: float = DEFAULT_REFINE_STEP,
        grid: Tuple[int, int] = (65, 9),
        tol_residual: float = 1e-8,
        tol_curvature: float = 1e-8,
        tol_isometry: float = 1e-6,
        tol_planarity: float = DEFAULT_PLANARITY_TOL,
        workers: Optional[int] = None,
    ):
        if samples < 2:
            raise ValueError(f"samples must be at least 2, got {samples}")
        self.samples = samples
        self.refine_levels = refine_levels
        self.refine_step = refine_step
        self.grid = grid
        self.tol_residual = tol_residual
        self.tol_curvature = tol_curvature
        self.tol_isometry = tol_isometry
        self.tol_planarity = tol_planarity
        self.workers = workers

    def classify(self, c: NurbsCurve, d: NurbsCurve) -> CurvePairClassification:
        return classify_pair(c, d, self.tol_planarity)

    def observed_degree(self, c: NurbsCurve, d: NurbsCurve) -> int:
        """Highest condition degree seen over a fixed set of t values (-1 if always degenerate)."""
        degree = -1
        for t in np.linspace(*c.domain, DEGREE_PROBES):
            for p in condition_polynomials(c, d, t):
                if not p.degenerate:
                    degree = max(degree, p.degree())
        return degree

    def solve(self, c: NurbsCurve, d: NurbsCurve) -> SolveResult:
        """Find every solution branch of the developability condition."""
        start_time = time.time()
        classification = self.classify(c, d)
        bound = degree_bound(classification)
        observed = self.observed_degree(c, d)
        logger.info("Condition degree %d (bound %d)", observed, bound)
        if classification.both_polynomial and observed > bound:
            logger.warning("Observed condition degree %d exceeds bound %d", observed, bound)

        branches = trace_branches(
            c,
            d,
            default_samples(self.samples, c.domain),
            refine_levels=self.refine_levels,
            refine_step=self.refine_step,
            workers=self.workers,
        )
        processing_time = time.time() - start_time
        logger.info(
            "Solved in %.2fs: %d branches, %d monotone",
            processing_time,
            len(branches),
            sum(b.monotone for b in branches),
        )
        return SolveResult(
            classification=classification,
            degree_bound=bound,
            observed_degree=observed,
            branches=branches,
            processing_time_seconds=processing_time,
        )

    def verify(
        self,
        c: NurbsCurve,
        d: NurbsCurve,
        ts,
        Ts,
        dTs=None,
        degenerate: bool = False,
    ) -> VerifyResult:
        """Recompute residuals and curvature for branch samples read back from a file."""
        start_time = time.time()
        branch = annotate_branch(c, d, ts, Ts, dTs, degenerate=degenerate)
        residuals = np.array(
            [normalised_residual(c, d, t, T) for t, T in zip(branch.ts, branch.Ts)]
        )
        offending = [float(t) for t, r in zip(branch.ts, residuals) if r > self.tol_residual]
        if offending:
            logger.warning("%d samples violate the residual tolerance %.1e", len(offending), self.tol_residual)

        curvature = None
        curvature_passed = None
        grid_residual = 0.0
        if len(branch) >= 2:
            # Plain interpolant of the file samples, so K measures the branch as given
            patch = DevelopablePatch(c, d, branch, polish=False)
            curvature = gaussian_curvature_profile(patch, self.grid, workers=self.workers)
            grid_residual = max(patch.residual(t) for t in curvature.t_values)
            curvature_passed = bool(curvature.max_abs_normalised <= self.tol_curvature)
            if not curvature_passed:
                logger.warning(
                    "Max normalised |K| %.3e exceeds the curvature tolerance %.1e",
                    curvature.max_abs_normalised,
                    self.tol_curvature,
                )

        return VerifyResult(
            branch=branch,
            residuals=residuals,
            offending_t=offending,
            curvature=curvature,
            grid_residual=float(grid_residual),
            curvature_passed=curvature_passed,
            processing_time_seconds=time.time() - start_time,
        )

    def export(
        self,
        c: NurbsCurve,
        d: NurbsCurve,
        branch: ReparamBranch,
        grid: Optional[Tuple[int, int]] = None,
        allow_regression: bool = False,
    ) -> TriangleMesh:
        """Tessellate the patch of a branch; non-monotone branches need ``allow_regression``."""
        if not branch.monotone and not allow_regression:
            raise RegressionError(
                "Branch is not monotone; pass allow_regression to export it anyway"
            )
        nt, nv = grid or self.grid
        mesh = tessellate(DevelopablePatch(c, d, branch), nt, nv)
        logger.info("Tessellated %d vertices, %d faces", len(mesh.vertices), len(mesh.faces))
        return mesh

    def unroll(
        self,
        c: NurbsCurve,
        d: NurbsCurve,
        branch: ReparamBranch,
        grid: Optional[Tuple[int, int]] = None,
    ) -> UnrollResult:
        """Develop the patch into the plane after the regression and curvature checks."""
        start_time = time.time()
        nt, nv = grid or self.grid
        patch = DevelopablePatch(c, d, branch)
        if not branch.monotone:
            raise RegressionError("Branch is not monotone; rulings cross in a regression area")
        profile = gaussian_curvature_profile(patch, (nt, nv), workers=self.workers)
        if profile.max_abs_normalised > self.tol_curvature:
            raise NonDevelopableError(
                f"Patch is not developable: max normalised |K| = {profile.max_abs_normalised:.3e}",
                max_curvature=profile.max_abs_normalised,
            )
        development = unroll(patch, nt, nv, check=False)
        mesh = tessellate(patch, nt, nv)
        metrics = isometry_metrics(patch, development, mesh)
        if metrics.edge_length_error > self.tol_isometry:
            logger.warning(
                "Edge-length error %.3e exceeds tolerance %.1e", metrics.edge_length_error, self.tol_isometry
            )
        return UnrollResult(
            development=development,
            metrics=metrics,
            mesh=mesh,
            curvature=profile,
            processing_time_seconds=time.time() - start_time,
        )
