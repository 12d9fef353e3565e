"""Fundamental forms, Gaussian curvature and area of ruled surfaces."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..errors import SingularMetricError
from ..models.entities import CurvatureProfile, FundamentalForms
from .base import BaseRuledSurface, Partials

logger = logging.getLogger(__name__)

FD_STEP = 1e-5
SINGULAR_METRIC_TOL = 1e-12

MODES = ("analytic", "fd")


def _fd_first(f, x: float, h: float, lo: float, hi: float) -> np.ndarray:
    """First derivative: central with Richardson extrapolation, one-sided near the ends."""
    if x - 2 * h >= lo and x + 2 * h <= hi:
        d1 = (f(x + h) - f(x - h)) / (2 * h)
        d2 = (f(x + 2 * h) - f(x - 2 * h)) / (4 * h)
        return (4 * d1 - d2) / 3
    if x - 2 * h < lo:
        return (-3 * f(x) + 4 * f(x + h) - f(x + 2 * h)) / (2 * h)
    return (3 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / (2 * h)


def _fd_second(f, x: float, h: float, lo: float, hi: float) -> np.ndarray:
    if x - h >= lo and x + h <= hi:
        return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    if x - h < lo:
        return (2 * f(x) - 5 * f(x + h) + 4 * f(x + 2 * h) - f(x + 3 * h)) / (h * h)
    return (2 * f(x) - 5 * f(x - h) + 4 * f(x - 2 * h) - f(x - 3 * h)) / (h * h)


def _fd_partials(surface: BaseRuledSurface, t: float, v: float, h: float) -> Partials:
    lo, hi = surface.t_range
    along_t = lambda v_: (lambda s: surface.surface_point(s, v_))
    along_v = lambda s: surface.surface_point(t, s)
    # v is unbounded in the formula, so central differences always apply there
    b_v = (along_v(v + h) - along_v(v - h)) / (2 * h)
    b_vv = (along_v(v + h) - 2 * along_v(v) + along_v(v - h)) / (h * h)
    b_t = _fd_first(along_t(v), t, h, lo, hi)
    b_tt = _fd_second(along_t(v), t, h, lo, hi)
    b_tv = (_fd_first(along_t(v + h), t, h, lo, hi) - _fd_first(along_t(v - h), t, h, lo, hi)) / (2 * h)
    return Partials(b_t=b_t, b_v=b_v, b_tt=b_tt, b_tv=b_tv, b_vv=b_vv)


def fundamental_forms(
    surface: BaseRuledSurface, t: float, v: float, mode: str = "analytic", step: float = FD_STEP
) -> FundamentalForms:
    """G, B and K = det B / det G at (t, v).

    ``mode="analytic"`` differentiates through the curves and T(t);
    ``mode="fd"`` differences surface points with step ``step``.
    """
    if mode not in MODES:
        raise ValueError(f"Unknown mode {mode!r}; expected one of {MODES}")
    p = surface.partials(t, v) if mode == "analytic" else _fd_partials(surface, t, v, step)

    n = np.cross(p.b_t, p.b_v)
    size = float(np.linalg.norm(n))
    if size == 0.0 or size <= SINGULAR_METRIC_TOL * np.linalg.norm(p.b_t) * np.linalg.norm(p.b_v):
        raise SingularMetricError(f"First fundamental form is singular at t={t}, v={v}")
    normal = n / size

    G = np.array(
        [
            [p.b_t @ p.b_t, p.b_t @ p.b_v],
            [p.b_v @ p.b_t, p.b_v @ p.b_v],
        ]
    )
    B = np.array(
        [
            [p.b_tt @ normal, p.b_tv @ normal],
            [p.b_tv @ normal, p.b_vv @ normal],
        ]
    )
    det_G = G[0, 0] * G[1, 1] - G[0, 1] * G[1, 0]
    det_B = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    return FundamentalForms(G=G, B=B, K=float(det_B / det_G), normal=normal)


def _curvature_row(surface: BaseRuledSurface, t: float, vs: np.ndarray, mode: str) -> np.ndarray:
    row = np.empty(len(vs))
    for j, v in enumerate(vs):
        try:
            row[j] = fundamental_forms(surface, t, v, mode).K
        except SingularMetricError:
            row[j] = np.nan
    return row


def gaussian_curvature_profile(
    surface: BaseRuledSurface,
    grid: Tuple[int, int] = (65, 9),
    mode: str = "analytic",
    workers: Optional[int] = None,
) -> CurvatureProfile:
    """Gaussian curvature on a uniform (t, v) grid.

    Singular points become NaN cells and are counted in ``masked_cells``.
    ``max_abs_normalised`` is max |K| times the squared bounding-box diagonal.
    """
    nt, nv = grid
    if nt < 2 or nv < 2:
        raise ValueError(f"Curvature grid must be at least 2x2, got {nt}x{nv}")
    ts = np.linspace(*surface.t_range, nt)
    vs = np.linspace(0.0, 1.0, nv)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(lambda t: _curvature_row(surface, t, vs, mode), ts))
    values = np.array(rows)

    masked = int(np.isnan(values).sum())
    finite = values[~np.isnan(values)]
    max_abs = float(np.abs(finite).max()) if finite.size else 0.0
    min_value = float(finite.min()) if finite.size else 0.0
    if masked:
        logger.warning("%d of %d curvature cells are singular", masked, values.size)
    return CurvatureProfile(
        t_values=ts,
        v_values=vs,
        values=values,
        masked_cells=masked,
        max_abs_normalised=max_abs * surface.scale**2,
        min_value=min_value,
    )


def patch_area(surface: BaseRuledSurface, panels: int = 64, order: int = 8) -> float:
    """Surface area as the integral of sqrt(det G) by composite Gauss-Legendre quadrature."""
    nodes, weights = leggauss(order)
    v_nodes = 0.5 * (nodes + 1.0)
    v_weights = 0.5 * weights
    edges = np.linspace(*surface.t_range, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        for x, wx in zip(nodes, weights):
            t = a + half * (x + 1.0)
            for v, wv in zip(v_nodes, v_weights):
                p = surface.partials(t, v)
                total += half * wx * wv * float(np.linalg.norm(np.cross(p.b_t, p.b_v)))
    return total
