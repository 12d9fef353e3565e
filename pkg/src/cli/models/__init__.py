"""Schemas for curve files and reports."""

from .schemas import (
    BranchSummary,
    ClassificationSummary,
    CurvatureSummary,
    CurveFileModel,
    UnrollMetrics,
    VerificationReport,
)

__all__ = [
    "BranchSummary",
    "ClassificationSummary",
    "CurvatureSummary",
    "CurveFileModel",
    "UnrollMetrics",
    "VerificationReport",
]
