"""Rational B-spline (NURBS) curves: evaluation, derivatives, Bézier spans, pair classification."""

import logging
from functools import cached_property
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate
from scipy.interpolate import BSpline

from .errors import CurveDomainError, CurveFormatError
from .models.entities import ControlPoint, CurvePairClassification

logger = logging.getLogger(__name__)

# Parameters this close outside the domain are clamped onto it
DOMAIN_SLACK = 1e-12

# Planarity tolerance, relative to the bounding-box diagonal
DEFAULT_PLANARITY_TOL = 1e-9


class NurbsCurve:
    """A clamped rational B-spline curve in 3D.

    With ``normalise=True`` (the default, used on ingestion) the knot vector is
    rescaled affinely onto [0, 1]. Weights are always rescaled so the largest
    is 1, which leaves the curve unchanged; the curve is polynomial exactly
    when all weights are then equal.

    Evaluation works on the homogeneous form (w*x, w*y, w*z, w) held in a
    scipy ``BSpline``; derivatives are projected with the quotient rule.
    """

    def __init__(
        self,
        degree: int,
        knots: Sequence[float],
        control_points: Sequence[ControlPoint],
        normalise: bool = True,
    ):
        cps = list(control_points)
        if int(degree) != degree or degree < 1:
            raise CurveFormatError(f"Curve degree must be a positive integer, got {degree}")
        degree = int(degree)
        if len(cps) < degree + 1:
            raise CurveFormatError(
                f"Degree {degree} needs at least {degree + 1} control points, got {len(cps)}"
            )

        knots = np.array(knots, dtype=float)
        if knots.ndim != 1 or len(knots) != len(cps) + degree + 1:
            raise CurveFormatError(
                f"Knot count must equal control points + degree + 1 "
                f"({len(cps) + degree + 1}), got {knots.size}"
            )
        if not np.all(np.isfinite(knots)):
            raise CurveFormatError("Knots must be finite")
        if np.any(np.diff(knots) < 0):
            raise CurveFormatError("Knots must be non-decreasing")
        if knots[-1] <= knots[0]:
            raise CurveFormatError("Knot vector spans an empty interval")
        if not (np.all(knots[: degree + 1] == knots[0]) and np.all(knots[-degree - 1 :] == knots[-1])):
            raise CurveFormatError(
                f"Knot vector must be clamped (end multiplicity {degree + 1})"
            )
        interior = knots[degree + 1 : -degree - 1]
        if interior.size:
            _, counts = np.unique(interior, return_counts=True)
            if counts.max() > degree:
                raise CurveFormatError(
                    f"Interior knot multiplicity {counts.max()} exceeds degree {degree}"
                )

        if normalise:
            knots = (knots - knots[0]) / (knots[-1] - knots[0])
            knots[: degree + 1] = 0.0
            knots[-degree - 1 :] = 1.0

        weights = np.array([cp.weight for cp in cps], dtype=float)
        weights = weights / weights.max()

        self._degree = degree
        self._knots = knots
        self._knots.flags.writeable = False
        self._points = np.array([cp.position for cp in cps], dtype=float)
        self._points.flags.writeable = False
        self._weights = weights
        self._weights.flags.writeable = False

    @classmethod
    def from_arrays(
        cls,
        degree: int,
        points: Sequence[Sequence[float]],
        knots: Optional[Sequence[float]] = None,
        weights: Optional[Sequence[float]] = None,
        normalise: bool = True,
    ) -> "NurbsCurve":
        """Build a curve from raw arrays.

        Missing knots default to a clamped uniform vector (a single Bézier
        span when there are exactly ``degree + 1`` points); missing weights
        default to 1.
        """
        points = [tuple(float(x) for x in p) for p in points]
        if weights is None:
            weights = [1.0] * len(points)
        if len(weights) != len(points):
            raise CurveFormatError(
                f"Got {len(weights)} weights for {len(points)} control points"
            )
        if knots is None:
            knots = clamped_uniform_knots(len(points), degree)
        cps = [ControlPoint(position=p, weight=float(w)) for p, w in zip(points, weights)]
        return cls(degree, knots, cps, normalise=normalise)

    @classmethod
    def _from_homogeneous(cls, degree: int, knots: Sequence[float], cpw: np.ndarray) -> "NurbsCurve":
        cps = [ControlPoint(position=tuple(q[:3] / q[3]), weight=float(q[3])) for q in cpw]
        return cls(degree, knots, cps, normalise=False)

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def knots(self) -> np.ndarray:
        return self._knots

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def control_points(self) -> Tuple[ControlPoint, ...]:
        return tuple(
            ControlPoint(position=tuple(p), weight=float(w))
            for p, w in zip(self._points, self._weights)
        )

    @property
    def domain(self) -> Tuple[float, float]:
        return float(self._knots[self._degree]), float(self._knots[-self._degree - 1])

    @cached_property
    def is_polynomial(self) -> bool:
        return bool(np.ptp(self._weights) <= 1e-12)

    @cached_property
    def is_bezier(self) -> bool:
        return len(np.unique(self._knots)) == 2

    @cached_property
    def homogeneous_points(self) -> np.ndarray:
        return np.column_stack([self._points * self._weights[:, None], self._weights])

    @cached_property
    def _spline(self) -> BSpline:
        return BSpline(self._knots, self.homogeneous_points, self._degree, extrapolate=False)

    def __repr__(self) -> str:
        kind = "Bezier" if self.is_bezier else "B-spline"
        ratio = "polynomial" if self.is_polynomial else "rational"
        return (
            f"NurbsCurve({kind}, {ratio}, degree={self._degree}, "
            f"points={len(self._points)}, domain={self.domain})"
        )

    # -- evaluation ------------------------------------------------------

    def _check(self, t: float) -> float:
        lo, hi = self.domain
        t = float(t)
        if not np.isfinite(t) or t < lo - DOMAIN_SLACK or t > hi + DOMAIN_SLACK:
            raise CurveDomainError(f"Parameter {t} outside curve domain [{lo}, {hi}]")
        return min(max(t, lo), hi)

    def derivatives(self, t: float, order: int = 2) -> np.ndarray:
        """Point and derivatives up to ``order`` at ``t``, shape (order + 1, 3)."""
        return self.derivatives_at(np.array([self._check(t)]), order)[:, 0]

    def derivatives_at(self, ts, order: int = 2) -> np.ndarray:
        """Vectorised :meth:`derivatives`: shape (order + 1, len(ts), 3)."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        lo, hi = self.domain
        if ts.size and (
            not np.all(np.isfinite(ts))
            or ts.min() < lo - DOMAIN_SLACK
            or ts.max() > hi + DOMAIN_SLACK
        ):
            raise CurveDomainError(f"Parameters outside curve domain [{lo}, {hi}]")
        ts = np.clip(ts, lo, hi)
        homogeneous = np.array(
            [
                self._spline(ts, nu=k) if k <= self._degree else np.zeros((len(ts), 4))
                for k in range(order + 1)
            ]
        )
        A = homogeneous[..., :3]
        if self.is_polynomial:
            # all weights are exactly 1 after normalisation
            return A
        w = homogeneous[..., 3:]
        ck = np.zeros_like(A)
        for k in range(order + 1):
            v = A[k].copy()
            for i in range(1, k + 1):
                v -= comb(k, i) * w[i] * ck[k - i]
            ck[k] = v / w[0]
        return ck

    def evaluate(self, t: float) -> np.ndarray:
        """Point on the curve at ``t``."""
        return self.derivatives(t, 0)[0]

    def derivative(self, t: float, order: int = 1) -> np.ndarray:
        """First or second derivative with respect to the curve parameter."""
        if order not in (1, 2):
            raise ValueError(f"Derivative order must be 1 or 2, got {order}")
        return self.derivatives(t, order)[order]

    def arc_length(self, a: Optional[float] = None, b: Optional[float] = None) -> float:
        """Arc length over [a, b] (whole domain by default) by adaptive quadrature."""
        lo, hi = self.domain
        a = lo if a is None else self._check(a)
        b = hi if b is None else self._check(b)
        breaks = [float(u) for u in np.unique(self._knots) if a < u < b]
        length, _ = integrate.quad(
            lambda t: float(np.linalg.norm(self.derivative(t, 1))),
            a,
            b,
            points=breaks or None,
            limit=200,
            epsabs=1e-13,
            epsrel=1e-12,
        )
        return float(length)

    # -- Bézier structure ------------------------------------------------

    def bezier_spans(self) -> List["NurbsCurve"]:
        """Split into single-span curves by inserting every interior knot to full multiplicity.

        Each span keeps its own parameter interval, so the concatenation
        reproduces the curve parameter for parameter.
        """
        p = self._degree
        knots = np.array(self._knots)
        cpw = np.array(self.homogeneous_points)
        for u in np.unique(knots[p + 1 : -p - 1]):
            s = int(np.sum(knots == u))
            if s < p:
                knots, cpw = _insert_knot(p, knots, cpw, float(u), p - s)

        breaks = np.unique(knots)
        spans = []
        for i, (a, b) in enumerate(zip(breaks[:-1], breaks[1:])):
            segment = cpw[i * p : i * p + p + 1]
            spans.append(
                NurbsCurve._from_homogeneous(p, [a] * (p + 1) + [b] * (p + 1), segment)
            )
        logger.debug("Extracted %d Bezier spans from %r", len(spans), self)
        return spans

    def power_coefficients(self) -> np.ndarray:
        """Homogeneous power-basis coefficients of a single span, shape (degree + 1, 4).

        Row k multiplies s**k where s in [0, 1] is the span-local parameter.
        """
        if not self.is_bezier:
            raise ValueError("power_coefficients needs a single Bezier span; use bezier_spans() first")
        p = self._degree
        Pw = self.homogeneous_points
        coeffs = np.zeros((p + 1, 4))
        for k in range(p + 1):
            acc = np.zeros(4)
            for i in range(k + 1):
                acc += (-1) ** (k - i) * comb(k, i) * Pw[i]
            coeffs[k] = comb(p, k) * acc
        return coeffs

    @cached_property
    def span_coefficients(self) -> Tuple[Tuple[Tuple[float, float], np.ndarray], ...]:
        """``(interval, power coefficients)`` for every Bézier span, in parameter order."""
        return tuple((span.domain, span.power_coefficients()) for span in self.bezier_spans())


def clamped_uniform_knots(n_points: int, degree: int) -> List[float]:
    """Clamped knot vector on [0, 1] with uniformly spaced interior knots."""
    if n_points < degree + 1:
        raise CurveFormatError(
            f"Degree {degree} needs at least {degree + 1} control points, got {n_points}"
        )
    interior = np.linspace(0.0, 1.0, n_points - degree + 1)[1:-1]
    return [0.0] * (degree + 1) + [float(u) for u in interior] + [1.0] * (degree + 1)


def _insert_knot(p: int, knots: np.ndarray, cpw: np.ndarray, u: float, r: int):
    """Insert knot ``u`` ``r`` times into a homogeneous control polygon (Boehm)."""
    n = len(cpw) - 1
    k = int(np.searchsorted(knots, u, side="right")) - 1
    s = int(np.sum(knots == u))
    r = min(r, p - s)
    if r <= 0:
        return knots, cpw

    uq = np.concatenate([knots[: k + 1], np.full(r, u), knots[k + 1 :]])
    qw = np.zeros((n + r + 1, cpw.shape[1]))
    qw[: k - p + 1] = cpw[: k - p + 1]
    qw[k - s + r : n + r + 1] = cpw[k - s : n + 1]
    rw = np.array(cpw[k - p : k - s + 1])

    L = k - p
    for j in range(1, r + 1):
        L = k - p + j
        for i in range(0, p - j - s + 1):
            alpha = (u - knots[L + i]) / (knots[i + k + 1] - knots[L + i])
            rw[i] = alpha * rw[i + 1] + (1.0 - alpha) * rw[i]
        qw[L] = rw[0]
        qw[k + r - j - s] = rw[p - j - s]
    for i in range(L + 1, k - s):
        qw[i] = rw[i - L]
    return uq, qw


def bounding_diagonal(*curves: NurbsCurve) -> float:
    """Diagonal of the bounding box of all control points (1.0 when degenerate)."""
    pts = np.vstack([c.points for c in curves])
    diag = float(np.linalg.norm(np.ptp(pts, axis=0)))
    return diag if diag > 0 else 1.0


def classify_pair(
    c: NurbsCurve, d: NurbsCurve, tol: float = DEFAULT_PLANARITY_TOL
) -> CurvePairClassification:
    """Decide whether both curves are polynomial and lie on parallel planes.

    Each control polygon is centred on its own mean; the two centred sets lie
    in parallel planes exactly when their union has rank at most 2. The
    common normal is the weakest right singular vector.
    """
    diag = bounding_diagonal(c, d)
    centred = np.vstack([c.points - c.points.mean(axis=0), d.points - d.points.mean(axis=0)])
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    normal = vt[-1]
    offset = float(np.abs(centred @ normal).max())
    planar_parallel = offset <= tol * diag

    common_normal = None
    if planar_parallel:
        if normal[int(np.argmax(np.abs(normal)))] < 0:
            normal = -normal
        common_normal = tuple(float(x) for x in normal)

    result = CurvePairClassification(
        both_polynomial=c.is_polynomial and d.is_polynomial,
        planar_parallel=planar_parallel,
        common_plane_normal=common_normal,
        effective_degree=max(c.degree, d.degree),
    )
    logger.debug(
        "Classified pair: polynomial=%s planar_parallel=%s (offset %.3e, diag %.3e) degree=%d",
        result.both_polynomial,
        result.planar_parallel,
        offset,
        diag,
        result.effective_degree,
    )
    return result
