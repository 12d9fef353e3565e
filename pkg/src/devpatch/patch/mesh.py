"""Triangle meshes of ruled surfaces and their OBJ text."""

import numpy as np

from ..models.entities import TriangleMesh
from .base import BaseRuledSurface

OBJ_HEADER = "# devpatch"


def grid_faces(nt: int, nv: int) -> np.ndarray:
    """Two triangles per grid cell, wound so the face normal follows b_t x b_v."""
    faces = []
    for i in range(nt - 1):
        for j in range(nv - 1):
            a = i * nv + j
            b = (i + 1) * nv + j
            faces.append((a, b, b + 1))
            faces.append((a, b + 1, a + 1))
    return np.array(faces, dtype=int).reshape(-1, 3)


def tessellate(surface: BaseRuledSurface, nt: int, nv: int) -> TriangleMesh:
    """(nt x nv) vertex grid over the surface's t range and v in [0, 1]."""
    if nt < 2 or nv < 2:
        raise ValueError(f"Tessellation needs nt >= 2 and nv >= 2, got {nt}x{nv}")
    ts = np.linspace(*surface.t_range, nt)
    vs = np.linspace(0.0, 1.0, nv)
    points = surface.grid_points(ts, vs)
    tt, vv = np.meshgrid(ts, vs, indexing="ij")
    return TriangleMesh(
        vertices=points.reshape(-1, 3),
        faces=grid_faces(nt, nv),
        parameters=np.column_stack([tt.ravel(), vv.ravel()]),
        grid=(nt, nv),
    )


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def to_obj(vertices: np.ndarray, faces: np.ndarray) -> str:
    """OBJ text with 1-based faces; 2D vertices are written with z = 0."""
    vertices = np.asarray(vertices, dtype=float)
    if vertices.shape[1] == 2:
        vertices = np.column_stack([vertices, np.zeros(len(vertices))])
    lines = [OBJ_HEADER]
    lines.extend(f"v {format_float(x)} {format_float(y)} {format_float(z)}" for x, y, z in vertices)
    lines.extend(f"f {a + 1} {b + 1} {c + 1}" for a, b, c in faces)
    return "\n".join(lines) + "\n"


def mesh_to_obj(mesh: TriangleMesh) -> str:
    return to_obj(mesh.vertices, mesh.faces)
