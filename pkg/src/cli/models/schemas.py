"""Pydantic schemas for curve files and verification reports."""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

REPORT_SCHEMA_VERSION = 1


class CurveFileModel(BaseModel):
    """Curve file: degree, knots, control points and optional weights."""

    model_config = ConfigDict(extra="forbid")

    degree: int = Field(..., ge=1)
    knots: List[float]
    points: List[Tuple[float, float, float]] = Field(..., min_length=2)
    weights: Optional[List[float]] = None

    @field_validator("weights")
    @classmethod
    def _positive_weights(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None and any(w <= 0 for w in value):
            raise ValueError("weights must be positive")
        return value


class ClassificationSummary(BaseModel):
    both_polynomial: bool
    planar_parallel: bool
    common_plane_normal: Optional[List[float]] = None
    effective_degree: int


class BranchSummary(BaseModel):
    index: int = Field(..., ge=0)
    file: Optional[str] = None
    samples: int
    monotone: bool
    curvature_compatible: bool
    t_range: List[float]
    T_range: List[float]
    max_residual: float
    singular_t: List[float] = Field(default_factory=list)
    zero_sign_samples: int = 0
    degenerate: bool = False


class CurvatureSummary(BaseModel):
    grid: List[int]
    max_abs_normalised: float
    min_value: float
    masked_cells: int = 0


class UnrollMetrics(BaseModel):
    edge_length_error: float
    arc_length_error: float
    area_error: float
    apex_concurrency: Optional[float] = None
    apex: Optional[List[float]] = None


class VerificationReport(BaseModel):
    """Machine-readable outcome of a devpatch command."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(REPORT_SCHEMA_VERSION, alias="schema")
    command: str
    exit_code: int
    message: Optional[str] = None
    classification: Optional[ClassificationSummary] = None
    observed_degree: Optional[int] = None
    degree_bound: Optional[int] = None
    branch_count: int = 0
    branches: List[BranchSummary] = Field(default_factory=list)
    max_residual: Optional[float] = None
    grid_residual: Optional[float] = None
    offending_t: List[float] = Field(default_factory=list)
    curvature: Optional[CurvatureSummary] = None
    curvature_passed: Optional[bool] = None
    mesh: Optional[Dict[str, int]] = None
    unroll: Optional[UnrollMetrics] = None
    outputs: List[str] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
