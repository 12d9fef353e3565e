"""Developable surface patches between two NURBS curves."""

from .curves import NurbsCurve, classify_pair
from .condition import (
    condition_polynomial,
    condition_polynomials,
    curvature_signature,
    degree_bound,
    reparam_derivative,
    triple_product,
)
from .roots import annotate_branch, isolate_roots, solve_condition, trace_branches
from .pipeline import DevelopabilityPipeline
from .factory import build_pipeline
from .patch import DevelopablePatch, RuledSurface
from .models.entities import (
    ControlPoint,
    CurvePairClassification,
    ConditionPolynomial,
    ReparamBranch,
    RootSet,
)

__all__ = [
    "NurbsCurve",
    "classify_pair",
    "condition_polynomial",
    "condition_polynomials",
    "curvature_signature",
    "degree_bound",
    "reparam_derivative",
    "triple_product",
    "annotate_branch",
    "isolate_roots",
    "solve_condition",
    "trace_branches",
    "DevelopabilityPipeline",
    "build_pipeline",
    "DevelopablePatch",
    "RuledSurface",
    "ControlPoint",
    "CurvePairClassification",
    "ConditionPolynomial",
    "ReparamBranch",
    "RootSet",
]
