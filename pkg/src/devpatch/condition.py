"""The algebraic developability condition and the curvature sign test.

For a ruled surface (1 - v) c(t) + v d(T(t)) to be developable the triple
product det(c'(t), d'(T), d(T) - c(t)) must vanish. At fixed t this is a
polynomial in T (per Bézier span of d), which is what the root finder solves.
"""

import logging
from typing import List

import numpy as np
import numpy.polynomial.polynomial as P

from .curves import NurbsCurve
from .errors import SingularDerivativeError, SingularRulingError
from .models.entities import (
    DEGENERACY_TOL,
    ConditionPolynomial,
    CurvatureSignature,
    CurvePairClassification,
)

logger = logging.getLogger(__name__)

# Relative size of the T' denominator below which the quotient is not trusted
SINGULAR_DERIVATIVE_TOL = 1e-12

# Projections smaller than this (relative to curvature scale) have sign 0
ZERO_SIGN_TOL = 1e-9


def _det3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """det of the 3x3 matrix with columns a, b, c."""
    return float(np.dot(a, np.cross(b, c)))


def triple_product(c: NurbsCurve, d: NurbsCurve, t: float, T: float) -> float:
    """det(c'(t), d'(T), d(T) - c(t))."""
    c0, c1 = c.derivatives(t, 1)
    d0, d1 = d.derivatives(T, 1)
    return _det3(c1, d1, d0 - c0)


def triple_products(c: NurbsCurve, d: NurbsCurve, t: float, Ts) -> np.ndarray:
    """:func:`triple_product` for many T at one t."""
    c0, c1 = c.derivatives(t, 1)
    d0, d1 = d.derivatives_at(Ts, 1)
    return np.einsum("j,ij->i", c1, np.cross(d1, d0 - c0))


def normalised_residual(c: NurbsCurve, d: NurbsCurve, t: float, T: float) -> float:
    """|triple product| / (1 + |c'| |d'| |d - c|), the scale-free residual."""
    c0, c1 = c.derivatives(t, 1)
    d0, d1 = d.derivatives(T, 1)
    r = d0 - c0
    scale = 1.0 + np.linalg.norm(c1) * np.linalg.norm(d1) * np.linalg.norm(r)
    return abs(_det3(c1, d1, r)) / scale


def ruling_normal_at(c: NurbsCurve, d: NurbsCurve, t: float, T: float) -> np.ndarray:
    """Unit normal c'(t) x (d(T) - c(t)) of the ruled surface at v = 0."""
    c0, c1 = c.derivatives(t, 1)
    r = d.evaluate(T) - c0
    n = np.cross(c1, r)
    size = float(np.linalg.norm(n))
    if size <= SINGULAR_DERIVATIVE_TOL * np.linalg.norm(c1) * np.linalg.norm(r) or size == 0.0:
        raise SingularRulingError(f"Ruling at t={t} is parallel to the boundary tangent")
    return n / size


def _poly_cross(a: List[np.ndarray], b: List[np.ndarray]) -> List[np.ndarray]:
    return [
        P.polysub(P.polymul(a[1], b[2]), P.polymul(a[2], b[1])),
        P.polysub(P.polymul(a[2], b[0]), P.polymul(a[0], b[2])),
        P.polysub(P.polymul(a[0], b[1]), P.polymul(a[1], b[0])),
    ]


def _poly_dot(vec: np.ndarray, polys: List[np.ndarray]) -> np.ndarray:
    return P.polyadd(P.polyadd(vec[0] * polys[0], vec[1] * polys[1]), vec[2] * polys[2])


def _span_polynomial(
    c0: np.ndarray, c1: np.ndarray, t: float, domain, coeffs: np.ndarray
) -> ConditionPolynomial:
    """Condition polynomial for one span of d given as homogeneous power coefficients.

    With X(s) the weighted position, w(s) the weight and g = c(t) x c'(t),
    Q(s) = c'.(X' x X) - w (g.X') + w' (g.X) equals the triple product times
    (b - a) w(s)^2, which is positive on the span.
    """
    X = [coeffs[:, k] for k in range(3)]
    w = coeffs[:, 3]
    dX = [P.polyder(x) for x in X]
    dw = P.polyder(w)
    g = np.cross(c0, c1)

    q = _poly_dot(c1, _poly_cross(dX, X))
    q = P.polysub(q, P.polymul(w, _poly_dot(g, dX)))
    q = P.polyadd(q, P.polymul(dw, _poly_dot(g, X)))
    q = np.atleast_1d(np.asarray(q, dtype=float))

    degree = coeffs.shape[0] - 1
    A = float(np.abs(coeffs).max())
    ref = np.linalg.norm(c1) * A * A * (1.0 + np.linalg.norm(c0)) * max(degree, 1)
    peak = float(np.abs(q).max())
    domain = (float(domain[0]), float(domain[1]))
    if peak <= DEGENERACY_TOL * ref:
        return ConditionPolynomial(
            coefficients=np.zeros(1), t_value=float(t), scale=1.0, domain=domain, degenerate=True
        )

    normalised = q / peak
    # Leading coefficients cancel exactly in theory; drop the round-off left behind
    keep = np.nonzero(np.abs(normalised) > DEGENERACY_TOL)[0]
    normalised = normalised[: int(keep[-1]) + 1]
    return ConditionPolynomial(
        coefficients=normalised, t_value=float(t), scale=peak, domain=domain
    )


def condition_polynomial(c: NurbsCurve, d: NurbsCurve, t: float) -> ConditionPolynomial:
    """Condition polynomial in T at fixed t for a single-span d.

    The result vanishes exactly where :func:`triple_product` does on the span.
    Coefficients are divided by their largest magnitude; an identically zero
    condition (coplanar curves) comes back flagged ``degenerate``.
    """
    if not d.is_bezier:
        raise ValueError(
            "condition_polynomial needs a single-span d; use condition_polynomials for splines"
        )
    return condition_polynomials(c, d, t)[0]


def condition_polynomials(c: NurbsCurve, d: NurbsCurve, t: float) -> List[ConditionPolynomial]:
    """One condition polynomial per Bézier span of d, each tagged with its T interval."""
    c0, c1 = c.derivatives(t, 1)
    return [_span_polynomial(c0, c1, t, domain, coeffs) for domain, coeffs in d.span_coefficients]


def reparam_derivative(c: NurbsCurve, d: NurbsCurve, t: float, T: float) -> float:
    """T'(t) = det(c'', d', d - c) / det(d'', c', d - c) on a solution branch.

    Raises :class:`SingularDerivativeError` when the denominator vanishes
    (for instance when d is a straight line).
    """
    c0, c1, c2 = c.derivatives(t, 2)
    d0, d1, d2 = d.derivatives(T, 2)
    r = d0 - c0
    den = _det3(d2, c1, r)
    scale = 1.0 + np.linalg.norm(d2) * np.linalg.norm(c1) * np.linalg.norm(r)
    if abs(den) <= SINGULAR_DERIVATIVE_TOL * scale:
        raise SingularDerivativeError(f"T' denominator vanishes at t={t}, T={T}")
    return _det3(c2, d1, r) / den


def _sign(value: float, tol: float) -> int:
    if abs(value) < tol:
        return 0
    return 1 if value > 0 else -1


def curvature_signature(
    c: NurbsCurve, d: NurbsCurve, t: float, T: float, normal
) -> CurvatureSignature:
    """Compare the sides toward which c and d bend across the ruling's tangent plane."""
    normal = np.asarray(normal, dtype=float)
    c2 = c.derivative(t, 2)
    d2 = d.derivative(T, 2)
    tol = ZERO_SIGN_TOL * (1.0 + np.linalg.norm(c2) + np.linalg.norm(d2))
    sign_c = _sign(float(c2 @ normal), tol)
    sign_d = _sign(float(d2 @ normal), tol)
    return CurvatureSignature(
        t_value=float(t),
        T_value=float(T),
        sign_c=sign_c,
        sign_d=sign_d,
        compatible=sign_c == sign_d and sign_c != 0,
    )


def degree_bound(classification: CurvePairClassification) -> int:
    """Upper bound on the condition degree: n - 1 for polynomial curves on parallel planes, else 2n - 2."""
    n = classification.effective_degree
    if n < 1:
        raise ValueError(f"Effective degree must be at least 1, got {n}")
    if classification.both_polynomial and classification.planar_parallel:
        return n - 1
    return 2 * n - 2
