"""Unrolling a developable patch into the plane and measuring how isometric it is."""

import logging
from typing import Optional, Tuple

import numpy as np

from ..errors import NonDevelopableError, RegressionError, SingularRulingError
from ..models.entities import IsometryMetrics, PlanarDevelopment, TriangleMesh
from .base import BaseRuledSurface
from .forms import gaussian_curvature_profile
from .mesh import format_float, grid_faces, tessellate, to_obj

logger = logging.getLogger(__name__)

DEFAULT_CURVATURE_TOL = 1e-6

# Ruling directions this close to parallel have no meaningful common apex
PARALLEL_TOL = 1e-6


def third_point(a: np.ndarray, b: np.ndarray, l_ab: float, l_bx: float, l_xa: float, side: int) -> np.ndarray:
    """Place X in the plane given |AB|, |BX|, |XA|, on the left of AB when ``side`` > 0."""
    along = (l_ab**2 + l_xa**2 - l_bx**2) / (2.0 * l_ab)
    across = np.sqrt(max(l_xa**2 - along**2, 0.0))
    u = (b - a) / l_ab
    n = np.array([-u[1], u[0]])
    return a + along * u + (across if side >= 0 else -across) * n


def _side(a: np.ndarray, b: np.ndarray, x: np.ndarray, normal: np.ndarray) -> int:
    return 1 if float(np.dot(np.cross(b - a, x - a), normal)) >= 0.0 else -1


def _ruling_normal(surface: BaseRuledSurface, t: float, a, b, x) -> np.ndarray:
    try:
        return surface.ruling_normal(t)
    except SingularRulingError:
        n = np.cross(b - a, x - a)
        return n / (np.linalg.norm(n) or 1.0)


def unroll(
    surface: BaseRuledSurface,
    nt: int,
    nv: int = 2,
    tol_curvature: float = DEFAULT_CURVATURE_TOL,
    curvature_grid: Optional[Tuple[int, int]] = None,
    check: bool = True,
) -> PlanarDevelopment:
    """Lay the patch into the plane ruling by ruling.

    The first ruling goes on the positive y-axis from the origin. Each strip
    between consecutive rulings is placed as two triangles whose edge lengths
    are copied from 3D, the side being chosen so the development keeps the
    surface orientation. Points inside a ruling are spaced linearly along it.
    Drift accumulates along t and is measured by :func:`isometry_metrics`,
    never corrected.

    Raises:
        RegressionError: the branch is not monotone.
        NonDevelopableError: normalised max |K| exceeds ``tol_curvature``.
    """
    if nt < 2 or nv < 2:
        raise ValueError(f"Development needs nt >= 2 and nv >= 2, got {nt}x{nv}")
    if check:
        branch = getattr(surface, "branch", None)
        if branch is not None and not branch.monotone:
            raise RegressionError("Branch is not monotone; rulings cross in a regression area")
        profile = gaussian_curvature_profile(surface, curvature_grid or (nt, max(nv, 3)))
        if profile.max_abs_normalised > tol_curvature:
            raise NonDevelopableError(
                f"Patch is not developable: max normalised |K| = {profile.max_abs_normalised:.3e} "
                f"exceeds {tol_curvature:.1e}",
                max_curvature=profile.max_abs_normalised,
            )

    ts = np.linspace(*surface.t_range, nt)
    vs = np.linspace(0.0, 1.0, nv)
    points = surface.grid_points(ts, np.array([0.0, 1.0]))
    P3, Q3 = points[:, 0], points[:, 1]

    P2 = np.zeros((nt, 2))
    Q2 = np.zeros((nt, 2))
    Q2[0] = (0.0, float(np.linalg.norm(Q3[0] - P3[0])))
    for i in range(nt - 1):
        normal = _ruling_normal(surface, ts[i], P3[i], Q3[i], P3[i + 1])
        P2[i + 1] = third_point(
            P2[i],
            Q2[i],
            np.linalg.norm(Q3[i] - P3[i]),
            np.linalg.norm(P3[i + 1] - Q3[i]),
            np.linalg.norm(P3[i + 1] - P3[i]),
            _side(P3[i], Q3[i], P3[i + 1], normal),
        )
        Q2[i + 1] = third_point(
            P2[i + 1],
            Q2[i],
            np.linalg.norm(Q3[i] - P3[i + 1]),
            np.linalg.norm(Q3[i + 1] - Q3[i]),
            np.linalg.norm(Q3[i + 1] - P3[i + 1]),
            _side(P3[i + 1], Q3[i], Q3[i + 1], normal),
        )

    vertices_2d = (1.0 - vs)[None, :, None] * P2[:, None, :] + vs[None, :, None] * Q2[:, None, :]
    tt, vv = np.meshgrid(ts, vs, indexing="ij")
    logger.info("Unrolled %dx%d grid over t in [%.6g, %.6g]", nt, nv, ts[0], ts[-1])
    return PlanarDevelopment(
        vertices_2d=vertices_2d,
        correspondence=np.stack([tt, vv], axis=-1),
        seam=((0.0, 0.0), (float(Q2[0, 0]), float(Q2[0, 1]))),
    )


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    """max |a - b| / |b| over entries with |b| > 0."""
    mask = b > 0
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(a[mask] - b[mask]) / b[mask]))


def _polyline_length(points: np.ndarray) -> float:
    return float(np.linalg.norm(np.diff(points, axis=0), axis=1).sum())


def ruling_concurrency(development: PlanarDevelopment) -> Tuple[Optional[float], Optional[Tuple[float, float]]]:
    """Least-squares common point of the unrolled ruling lines.

    Returns ``(max distance from the apex to any ruling line / development
    diagonal, apex)``, or ``(None, None)`` when the rulings are parallel.
    """
    P = development.vertices_2d[:, 0]
    Q = development.vertices_2d[:, -1]
    direction = Q - P
    lengths = np.linalg.norm(direction, axis=1)
    keep = lengths > 0
    u = direction[keep] / lengths[keep, None]
    normals = np.column_stack([-u[:, 1], u[:, 0]])
    rhs = np.einsum("ij,ij->i", normals, P[keep])

    singular = np.linalg.svd(normals, compute_uv=False)
    if len(singular) < 2 or singular[-1] <= PARALLEL_TOL * singular[0]:
        return None, None
    apex, *_ = np.linalg.lstsq(normals, rhs, rcond=None)
    flat = development.flat_vertices()
    diag = float(np.linalg.norm(np.ptp(flat, axis=0))) or 1.0
    distance = float(np.abs(normals @ apex - rhs).max())
    return distance / diag, (float(apex[0]), float(apex[1]))


def isometry_metrics(
    surface: BaseRuledSurface, development: PlanarDevelopment, mesh: Optional[TriangleMesh] = None
) -> IsometryMetrics:
    """Relative edge-length, boundary arc-length and area errors of a development."""
    nt, nv = development.grid
    if mesh is None:
        mesh = tessellate(surface, nt, nv)
    if mesh.grid != (nt, nv):
        raise ValueError(f"Mesh grid {mesh.grid} does not match development grid {(nt, nv)}")

    flat = development.flat_vertices()
    edges = mesh.edges()
    len3 = np.linalg.norm(mesh.vertices[edges[:, 0]] - mesh.vertices[edges[:, 1]], axis=1)
    len2 = np.linalg.norm(flat[edges[:, 0]] - flat[edges[:, 1]], axis=1)

    grid3 = mesh.vertices.reshape(nt, nv, 3)
    grid2 = development.vertices_2d
    arc3 = np.array([_polyline_length(grid3[:, 0]), _polyline_length(grid3[:, -1])])
    arc2 = np.array([_polyline_length(grid2[:, 0]), _polyline_length(grid2[:, -1])])

    faces = grid_faces(nt, nv)
    a, b, c = (flat[faces[:, k]] for k in range(3))
    cross = (b - a)[:, 0] * (c - a)[:, 1] - (b - a)[:, 1] * (c - a)[:, 0]
    area2 = float(0.5 * np.abs(cross).sum())
    area3 = mesh.area()

    concurrency, apex = ruling_concurrency(development)
    return IsometryMetrics(
        edge_length_error=_relative(len2, len3),
        arc_length_error=_relative(arc2, arc3),
        area_error=abs(area2 - area3) / area3 if area3 > 0 else 0.0,
        apex_concurrency=concurrency,
        apex=apex,
    )


def development_to_obj(development: PlanarDevelopment) -> str:
    """OBJ of the development at z = 0, with the same faces as the 3D tessellation."""
    nt, nv = development.grid
    return to_obj(development.flat_vertices(), grid_faces(nt, nv))


def development_to_csv(development: PlanarDevelopment) -> str:
    """``t,v,x,y`` rows in grid order."""
    lines = ["t,v,x,y"]
    for (t, v), (x, y) in zip(development.flat_parameters(), development.flat_vertices()):
        lines.append(",".join(format_float(value) for value in (t, v, x, y)))
    return "\n".join(lines) + "\n"
