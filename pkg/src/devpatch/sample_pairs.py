"""Canonical curve pairs with known developable (or non-developable) joins."""

from typing import Tuple

import numpy as np

from .curves import NurbsCurve

CurvePair = Tuple[NurbsCurve, NurbsCurve]


def arch(a: float = 2.0, z: float = 0.0) -> NurbsCurve:
    """Cubic Bézier (0,0), (1,a), (2,a), (3,0) at height z: c'(t) = 3 (1, a (1 - 2t))."""
    return NurbsCurve.from_arrays(3, [(0, 0, z), (1, a, z), (2, a, z), (3, 0, z)])


def _transform(curve: NurbsCurve, scale=(1.0, 1.0, 1.0), offset=(0.0, 0.0, 0.0)) -> NurbsCurve:
    points = curve.points * np.asarray(scale, dtype=float) + np.asarray(offset, dtype=float)
    return NurbsCurve.from_arrays(curve.degree, points, knots=curve.knots, weights=curve.weights)


def cylinder_pair(a: float = 2.0, offset=(0.0, 0.0, 1.0)) -> CurvePair:
    """d = c + offset: parallel rulings, solved by T(t) = t."""
    c = arch(a)
    return c, _transform(c, offset=offset)


def cone_pair(a: float = 2.0, factor: float = 2.0, height: float = 1.0) -> CurvePair:
    """d = factor * c in x, y lifted to z = height: rulings meet at (0, 0, -height / (factor - 1))."""
    c = arch(a)
    return c, _transform(c, scale=(factor, factor, 0.0), offset=(0.0, 0.0, height))


def scaled_pair(a: float = 2.0, sx: float = 1.0, sy: float = 1.5, height: float = 1.0) -> CurvePair:
    """d = (sx x, sy y, height): curvature-compatible, solved by an increasing T(t) when sy >= sx."""
    c = arch(a)
    return c, _transform(c, scale=(sx, sy, 0.0), offset=(0.0, 0.0, height))


def mirrored_pair(a: float = 2.0, sx: float = 1.0, sy: float = 1.0, height: float = 1.0) -> CurvePair:
    """d = (sx x, -sy y, height): d bends the other way, so T(t) decreases (T = 1 - t when sx = sy)."""
    c = arch(a)
    return c, _transform(c, scale=(sx, -sy, 0.0), offset=(0.0, 0.0, height))


def saddle_pair() -> CurvePair:
    """c(t) = (t, 0, 0), d(T) = (T, 1, T): the triple product is -1 everywhere."""
    c = NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)])
    d = NurbsCurve.from_arrays(1, [(0, 1, 0), (1, 1, 1)])
    return c, d


def planar_pair(a: float = 2.0, gap: float = 4.0) -> CurvePair:
    """Two cubics in the plane z = 0; every T solves the condition."""
    c = arch(a)
    return c, _transform(c, offset=(0.0, gap, 0.0))


def quarter_cylinder_pair(radius: float = 1.0, height: float = 1.0) -> CurvePair:
    """Exact rational quarter circles at z = 0 and z = height."""
    w = np.sqrt(2.0) / 2.0
    points = [(radius, 0.0, 0.0), (radius, radius, 0.0), (0.0, radius, 0.0)]
    c = NurbsCurve.from_arrays(2, points, weights=[1.0, w, 1.0])
    return c, _transform(c, offset=(0.0, 0.0, height))


def spline_pair() -> CurvePair:
    """Convex C2 cubic B-spline c (three spans) and d = (2x, 3y, 1)."""
    points = [(0, 0, 0), (1, 2, 0), (2, 3, 0), (3, 3, 0), (4, 2, 0), (5, 0, 0)]
    c = NurbsCurve.from_arrays(3, points)
    return c, _transform(c, scale=(2.0, 3.0, 0.0), offset=(0.0, 0.0, 1.0))


def random_cubic_pair(rng: np.random.Generator) -> CurvePair:
    """Two random cubic Bézier curves, generically non-planar."""
    c = NurbsCurve.from_arrays(3, rng.uniform(-1.0, 1.0, (4, 3)))
    d = NurbsCurve.from_arrays(3, rng.uniform(-1.0, 1.0, (4, 3)) + (0.0, 0.0, 2.0))
    return c, d


def random_planar_parallel_pair(rng: np.random.Generator) -> CurvePair:
    """Random cubic Bézier curves in the parallel planes z = 0 and z = 1."""
    c_points = np.column_stack([rng.uniform(-1.0, 1.0, (4, 2)), np.zeros(4)])
    d_points = np.column_stack([rng.uniform(-1.0, 1.0, (4, 2)), np.ones(4)])
    return NurbsCurve.from_arrays(3, c_points), NurbsCurve.from_arrays(3, d_points)


def random_rational_pair(rng: np.random.Generator) -> CurvePair:
    """Random rational cubic Bézier curves with weights in [0.5, 2]."""
    c = NurbsCurve.from_arrays(3, rng.uniform(-1.0, 1.0, (4, 3)), weights=rng.uniform(0.5, 2.0, 4))
    d = NurbsCurve.from_arrays(
        3, rng.uniform(-1.0, 1.0, (4, 3)) + (0.0, 0.0, 2.0), weights=rng.uniform(0.5, 2.0, 4)
    )
    return c, d
