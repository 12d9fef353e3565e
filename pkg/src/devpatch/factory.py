"""Factory for constructing a configured developability pipeline."""

import logging
from typing import Optional, Tuple

from .curves import DEFAULT_PLANARITY_TOL
from .pipeline import DevelopabilityPipeline
from .roots import DEFAULT_REFINE_LEVELS, DEFAULT_REFINE_STEP, DEFAULT_SAMPLES

logger = logging.getLogger(__name__)


def build_pipeline(
    # Sampling
    samples: int = DEFAULT_SAMPLES,
    refine_levels: int = DEFAULT_REFINE_LEVELS,
    refine_step: float = DEFAULT_REFINE_STEP,
    grid: Tuple[int, int] = (65, 9),
    # Tolerances
    tol_residual: float = 1e-8,
    tol_curvature: float = 1e-8,
    tol_isometry: float = 1e-6,
    tol_planarity: float = DEFAULT_PLANARITY_TOL,
    # Parallelism
    workers: Optional[int] = None,
) -> DevelopabilityPipeline:
    """Build a DevelopabilityPipeline from explicit options.

    ``workers=None`` lets the thread pool pick its default size.
    """
    logger.info(
        "Sampling: %d samples | refine levels %d (step %.3g) | grid %dx%d",
        samples,
        refine_levels,
        refine_step,
        grid[0],
        grid[1],
    )
    logger.info(
        "Tolerances: residual=%.1e | curvature=%.1e | isometry=%.1e | planarity=%.1e | workers=%s",
        tol_residual,
        tol_curvature,
        tol_isometry,
        tol_planarity,
        workers if workers is not None else "default",
    )
    return DevelopabilityPipeline(
        samples=samples,
        refine_levels=refine_levels,
        refine_step=refine_step,
        grid=grid,
        tol_residual=tol_residual,
        tol_curvature=tol_curvature,
        tol_isometry=tol_isometry,
        tol_planarity=tol_planarity,
        workers=workers,
    )
