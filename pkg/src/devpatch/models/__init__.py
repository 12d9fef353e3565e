"""Data models for the developable patch pipeline."""

from .entities import (
    ControlPoint,
    CurvePairClassification,
    ConditionPolynomial,
    CurvatureSignature,
    RootSet,
    ReparamBranch,
    FundamentalForms,
    CurvatureProfile,
    TriangleMesh,
    PlanarDevelopment,
    IsometryMetrics,
    SolveResult,
    VerifyResult,
    UnrollResult,
)

__all__ = [
    "ControlPoint",
    "CurvePairClassification",
    "ConditionPolynomial",
    "CurvatureSignature",
    "RootSet",
    "ReparamBranch",
    "FundamentalForms",
    "CurvatureProfile",
    "TriangleMesh",
    "PlanarDevelopment",
    "IsometryMetrics",
    "SolveResult",
    "VerifyResult",
    "UnrollResult",
]
