"""Data models for the developable patch pipeline."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import numpy.polynomial.polynomial as P

from ..errors import CurveFormatError

# Normalised coefficients below this are treated as zero
DEGENERACY_TOL = 1e-12

# Highest coefficient above this (after normalisation) defines the observed degree
DEGREE_TOL = 1e-10


@dataclass(frozen=True)
class ControlPoint:
    """A weighted control point of a rational curve."""

    position: Tuple[float, float, float]
    weight: float = 1.0

    def __post_init__(self):
        if len(self.position) != 3:
            raise CurveFormatError(f"Control point must have 3 coordinates, got {len(self.position)}")
        if not all(np.isfinite(self.position)):
            raise CurveFormatError(f"Control point coordinates must be finite: {self.position}")
        if not (np.isfinite(self.weight) and self.weight > 0):
            raise CurveFormatError(f"Control point weight must be positive, got {self.weight}")

    @property
    def homogeneous(self) -> np.ndarray:
        """(w*x, w*y, w*z, w)."""
        return np.append(np.asarray(self.position, dtype=float) * self.weight, self.weight)


@dataclass(frozen=True)
class CurvePairClassification:
    """Structural facts about a curve pair that drive the degree bound."""

    both_polynomial: bool
    planar_parallel: bool
    common_plane_normal: Optional[Tuple[float, float, float]]
    effective_degree: int

    def to_dict(self) -> dict:
        return {
            "both_polynomial": self.both_polynomial,
            "planar_parallel": self.planar_parallel,
            "common_plane_normal": list(self.common_plane_normal) if self.common_plane_normal else None,
            "effective_degree": self.effective_degree,
        }


@dataclass
class ConditionPolynomial:
    """Developability condition p(T) at a fixed t, in the power basis.

    Coefficients are indexed by power of the span-local parameter
    ``s = (T - a) / (b - a)`` where ``domain = (a, b)``; for a single Bézier
    span on [0, 1] this is T itself. The polynomial equals the triple product
    times a positive factor (span width times squared weight) divided by
    ``scale``.
    """

    coefficients: np.ndarray
    t_value: float
    scale: float
    domain: Tuple[float, float] = (0.0, 1.0)
    degenerate: bool = False

    def local(self, s):
        """Evaluate in the span-local parameter."""
        return P.polyval(s, self.coefficients)

    def to_local(self, T):
        a, b = self.domain
        return (np.asarray(T, dtype=float) - a) / (b - a)

    def to_global(self, s):
        a, b = self.domain
        return a + (b - a) * np.asarray(s, dtype=float)

    def __call__(self, T):
        return self.local(self.to_local(T))

    def derivative_local(self, s):
        return P.polyval(s, P.polyder(self.coefficients))

    def degree(self, tol: float = DEGREE_TOL) -> int:
        """Index of the highest coefficient above ``tol`` (-1 when degenerate)."""
        nonzero = np.nonzero(np.abs(self.coefficients) > tol)[0]
        return int(nonzero[-1]) if len(nonzero) else -1


@dataclass(frozen=True)
class CurvatureSignature:
    """Normal-curvature sign test at one ruling."""

    t_value: float
    T_value: float
    sign_c: int
    sign_d: int
    compatible: bool


@dataclass
class RootSet:
    """Real roots of the condition in T for one value of t."""

    t_value: float
    roots: np.ndarray
    multiplicity_flags: np.ndarray
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.roots)


@dataclass
class ReparamBranch:
    """A continuous sampled solution T(t) of the developability condition."""

    samples: np.ndarray  # (n, 2) rows of (t, T), t strictly increasing
    derivative_estimates: np.ndarray  # T'(t) per sample
    monotone: bool
    curvature_compatible: bool
    t_range: Tuple[float, float]
    T_range: Tuple[float, float]
    max_residual: float = 0.0
    singular_t: Tuple[float, ...] = ()
    zero_sign_samples: int = 0
    degenerate: bool = False

    @property
    def ts(self) -> np.ndarray:
        return self.samples[:, 0]

    @property
    def Ts(self) -> np.ndarray:
        return self.samples[:, 1]

    def __len__(self) -> int:
        return len(self.samples)

    def rows(self) -> List[Tuple[float, float, float]]:
        """(t, T, dT) rows for the branch file."""
        return [
            (float(t), float(T), float(dT))
            for (t, T), dT in zip(self.samples, self.derivative_estimates)
        ]

    def to_dict(self) -> dict:
        return {
            "samples": len(self),
            "monotone": self.monotone,
            "curvature_compatible": self.curvature_compatible,
            "t_range": list(self.t_range),
            "T_range": list(self.T_range),
            "max_residual": self.max_residual,
            "singular_t": list(self.singular_t),
            "zero_sign_samples": self.zero_sign_samples,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental forms and Gaussian curvature at a point."""

    G: np.ndarray
    B: np.ndarray
    K: float
    normal: np.ndarray

    @property
    def det_G(self) -> float:
        return float(np.linalg.det(self.G))

    @property
    def det_B(self) -> float:
        return float(self.B[0, 0] * self.B[1, 1] - self.B[0, 1] * self.B[1, 0])


@dataclass
class CurvatureProfile:
    """Gaussian curvature sampled on a (t, v) grid; singular cells are NaN."""

    t_values: np.ndarray
    v_values: np.ndarray
    values: np.ndarray
    masked_cells: int
    max_abs_normalised: float
    min_value: float

    def to_dict(self) -> dict:
        return {
            "grid": [len(self.t_values), len(self.v_values)],
            "max_abs_normalised": self.max_abs_normalised,
            "min_value": self.min_value,
            "masked_cells": self.masked_cells,
        }


@dataclass
class TriangleMesh:
    """Vertex grid of a patch with (t, v) parameters per vertex."""

    vertices: np.ndarray  # (nt * nv, 3)
    faces: np.ndarray  # (m, 3) zero-based
    parameters: np.ndarray  # (nt * nv, 2)
    grid: Tuple[int, int]

    def edges(self) -> np.ndarray:
        """Unique undirected edges as sorted index pairs."""
        pairs = np.concatenate(
            [self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]]
        )
        return np.unique(np.sort(pairs, axis=1), axis=0)

    def area(self) -> float:
        a, b, c = (self.vertices[self.faces[:, k]] for k in range(3))
        return float(0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1).sum())


@dataclass
class PlanarDevelopment:
    """Isometric flattening of a patch; the first ruling lies on the y-axis."""

    vertices_2d: np.ndarray  # (nt, nv, 2)
    correspondence: np.ndarray  # (nt, nv, 2) of (t, v)
    seam: Tuple[Tuple[float, float], Tuple[float, float]]

    @property
    def grid(self) -> Tuple[int, int]:
        return self.vertices_2d.shape[0], self.vertices_2d.shape[1]

    def flat_vertices(self) -> np.ndarray:
        return self.vertices_2d.reshape(-1, 2)

    def flat_parameters(self) -> np.ndarray:
        return self.correspondence.reshape(-1, 2)


@dataclass
class IsometryMetrics:
    """How far a development departs from the 3D patch."""

    edge_length_error: float
    arc_length_error: float
    area_error: float
    apex_concurrency: Optional[float] = None
    apex: Optional[Tuple[float, float]] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "edge_length_error": self.edge_length_error,
            "arc_length_error": self.arc_length_error,
            "area_error": self.area_error,
            "apex_concurrency": self.apex_concurrency,
            "apex": list(self.apex) if self.apex is not None else None,
        }


@dataclass
class SolveResult:
    """Output of solving the condition over a curve pair."""

    classification: CurvePairClassification
    degree_bound: int
    observed_degree: int
    branches: List[ReparamBranch]
    processing_time_seconds: float = 0.0

    @property
    def monotone_branches(self) -> List[ReparamBranch]:
        return [b for b in self.branches if b.monotone]


@dataclass
class VerifyResult:
    """Residual and curvature checks of a given branch."""

    branch: ReparamBranch
    residuals: np.ndarray
    offending_t: List[float]
    curvature: Optional[CurvatureProfile]
    grid_residual: float
    # None when the branch has too few samples for a curvature grid
    curvature_passed: Optional[bool] = None
    processing_time_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.offending_t


@dataclass
class UnrollResult:
    """A development together with the checks it passed."""

    development: PlanarDevelopment
    metrics: IsometryMetrics
    mesh: TriangleMesh
    curvature: CurvatureProfile
    processing_time_seconds: float = 0.0
