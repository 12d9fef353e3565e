"""Abstract base class for ruled surfaces b(t, v) = (1 - v) c(t) + v d(T(t))."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..condition import normalised_residual
from ..curves import DOMAIN_SLACK, NurbsCurve, bounding_diagonal
from ..errors import CurveDomainError, SingularRulingError

# |b_t x b_v| below this (relative to |b_t| |b_v|) means no tangent plane
SINGULAR_NORMAL_TOL = 1e-12


@dataclass(frozen=True)
class Partials:
    """First and second partial derivatives of b at one (t, v)."""

    b_t: np.ndarray
    b_v: np.ndarray
    b_tt: np.ndarray
    b_tv: np.ndarray
    b_vv: np.ndarray


class BaseRuledSurface(ABC):
    """Interface shared by the plain ruled surface and the developable patch."""

    def __init__(self, curve_c: NurbsCurve, curve_d: NurbsCurve):
        self.curve_c = curve_c
        self.curve_d = curve_d
        self.scale = bounding_diagonal(curve_c, curve_d)

    @property
    @abstractmethod
    def t_range(self) -> Tuple[float, float]:
        """Interval of t on which the surface is defined."""

    @abstractmethod
    def reparametrisation(self, t: float) -> np.ndarray:
        """
        Reparametrisation of d at ``t``.

        Args:
            t: Parameter on c, inside ``t_range``.

        Returns:
            Array ``[T, T', T'']``.
        """

    def _check_t(self, t: float) -> float:
        lo, hi = self.t_range
        t = float(t)
        if not np.isfinite(t) or t < lo - DOMAIN_SLACK or t > hi + DOMAIN_SLACK:
            raise CurveDomainError(f"t={t} outside surface range [{lo}, {hi}]")
        return min(max(t, lo), hi)

    def T(self, t: float) -> float:
        return float(self.reparametrisation(t)[0])

    def surface_point(self, t: float, v: float) -> np.ndarray:
        """(1 - v) c(t) + v d(T(t))."""
        t = self._check_t(t)
        c = self.curve_c.evaluate(t)
        d = self.curve_d.evaluate(self.T(t))
        return (1.0 - v) * c + v * d

    def partials(self, t: float, v: float) -> Partials:
        """Analytic partials by the chain rule through T(t); b_vv is identically zero."""
        t = self._check_t(t)
        T, T1, T2 = self.reparametrisation(t)
        c0, c1, c2 = self.curve_c.derivatives(t, 2)
        d0, d1, d2 = self.curve_d.derivatives(T, 2)
        return Partials(
            b_t=(1.0 - v) * c1 + v * T1 * d1,
            b_v=d0 - c0,
            b_tt=(1.0 - v) * c2 + v * (T1 * T1 * d2 + T2 * d1),
            b_tv=T1 * d1 - c1,
            b_vv=np.zeros(3),
        )

    def ruling_normal(self, t: float, v: float = 0.0) -> np.ndarray:
        """Unit normal b_t x b_v; constant along the ruling exactly when the surface is developable."""
        p = self.partials(t, v)
        n = np.cross(p.b_t, p.b_v)
        size = float(np.linalg.norm(n))
        if size == 0.0 or size <= SINGULAR_NORMAL_TOL * np.linalg.norm(p.b_t) * np.linalg.norm(p.b_v):
            raise SingularRulingError(f"Ruling at t={t} is parallel to the surface tangent")
        return n / size

    def residual(self, t: float) -> float:
        """Normalised triple-product residual of the ruling at ``t``."""
        t = self._check_t(t)
        return normalised_residual(self.curve_c, self.curve_d, t, self.T(t))

    def grid_points(self, ts, vs) -> np.ndarray:
        """Surface points on a (t, v) grid, shape (len(ts), len(vs), 3)."""
        ts = np.asarray(ts, dtype=float)
        vs = np.asarray(vs, dtype=float)
        Ts = np.array([self.T(self._check_t(t)) for t in ts])
        c = self.curve_c.derivatives_at(ts, 0)[0]
        d = self.curve_d.derivatives_at(Ts, 0)[0]
        return (1.0 - vs)[None, :, None] * c[:, None, :] + vs[None, :, None] * d[:, None, :]
