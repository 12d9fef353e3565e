"""Ruled surfaces, their differential geometry, meshes and planar developments."""

from .base import BaseRuledSurface, Partials
from .forms import fundamental_forms, gaussian_curvature_profile, patch_area
from .mesh import grid_faces, mesh_to_obj, tessellate, to_obj
from .ruled import DevelopablePatch, RuledSurface
from .unroll import (
    development_to_csv,
    development_to_obj,
    isometry_metrics,
    ruling_concurrency,
    third_point,
    unroll,
)

__all__ = [
    "BaseRuledSurface",
    "Partials",
    "RuledSurface",
    "DevelopablePatch",
    "fundamental_forms",
    "gaussian_curvature_profile",
    "patch_area",
    "tessellate",
    "grid_faces",
    "to_obj",
    "mesh_to_obj",
    "unroll",
    "isometry_metrics",
    "ruling_concurrency",
    "third_point",
    "development_to_obj",
    "development_to_csv",
]
