"""Concrete ruled surfaces: the plain join of two curves and the developable patch."""

import logging
from typing import Dict, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from ..condition import reparam_derivative
from ..curves import NurbsCurve
from ..errors import SingularDerivativeError
from ..models.entities import ReparamBranch
from .base import BaseRuledSurface

logger = logging.getLogger(__name__)

# Newton polishing of T(t) onto the condition
POLISH_ITERATIONS = 8
POLISH_STEP_TOL = 1e-15
# A polished T further than this from the interpolant is rejected
POLISH_MAX_JUMP = 1e-3


def _det3(a, b, c) -> float:
    return float(np.dot(a, np.cross(b, c)))


class RuledSurface(BaseRuledSurface):
    """b(t, v) = (1 - v) c(t) + v d(t), joining equal parameters with no reparametrisation.

    Used as the non-developable control and for checks that hold on every
    ruled surface.
    """

    @property
    def t_range(self) -> Tuple[float, float]:
        lo = max(self.curve_c.domain[0], self.curve_d.domain[0])
        hi = min(self.curve_c.domain[1], self.curve_d.domain[1])
        return lo, hi

    def reparametrisation(self, t: float) -> np.ndarray:
        return np.array([self._check_t(t), 1.0, 0.0])


class DevelopablePatch(BaseRuledSurface):
    """The ruled surface between c and d reparametrised along a solution branch.

    T(t) between branch samples starts from a monotone cubic (PCHIP)
    interpolant and, unless the branch is degenerate, is polished by Newton
    steps on the triple product so every evaluated ruling satisfies the
    condition. T' uses the determinant quotient (interpolant slope where that
    is singular) and T'' its derivative along the branch.
    """

    def __init__(
        self,
        curve_c: NurbsCurve,
        curve_d: NurbsCurve,
        branch: ReparamBranch,
        polish: bool = True,
    ):
        super().__init__(curve_c, curve_d)
        if len(branch) < 2:
            raise ValueError("A patch needs a branch with at least two samples")
        self.branch = branch
        self.interpolation = PchipInterpolator(branch.ts, branch.Ts, extrapolate=False)
        self.polish = polish and not branch.degenerate
        self._cache: Dict[float, np.ndarray] = {}

    @property
    def t_range(self) -> Tuple[float, float]:
        return self.branch.t_range

    def _polished(self, t: float, T0: float) -> float:
        c0, c1 = self.curve_c.derivatives(t, 1)
        lo, hi = self.curve_d.domain
        T = T0
        for _ in range(POLISH_ITERATIONS):
            d0, d1, d2 = self.curve_d.derivatives(T, 2)
            r = d0 - c0
            fprime = _det3(c1, d2, r)
            if fprime == 0.0:
                break
            step = _det3(c1, d1, r) / fprime
            T = T - step
            if not (lo <= T <= hi) or abs(T - T0) > POLISH_MAX_JUMP:
                logger.debug("Polish left the neighbourhood at t=%.6g; keeping interpolant", t)
                return T0
            if abs(step) <= POLISH_STEP_TOL:
                break
        return T

    def _derivatives(self, t: float, T: float) -> Tuple[float, float]:
        c0, c1, c2, c3 = self.curve_c.derivatives(t, 3)
        d0, d1, d2, d3 = self.curve_d.derivatives(T, 3)
        r = d0 - c0
        try:
            T1 = reparam_derivative(self.curve_c, self.curve_d, t, T) if self.polish else None
        except SingularDerivativeError:
            T1 = None
        if T1 is None:
            return (
                float(self.interpolation(t, 1)),
                float(self.interpolation(t, 2)),
            )

        r1 = T1 * d1 - c1
        N = _det3(c2, d1, r)
        D = _det3(d2, c1, r)
        dN = _det3(c3, d1, r) + _det3(c2, T1 * d2, r) + _det3(c2, d1, r1)
        dD = _det3(T1 * d3, c1, r) + _det3(d2, c2, r) + _det3(d2, c1, r1)
        return T1, (dN * D - N * dD) / (D * D)

    def reparametrisation(self, t: float) -> np.ndarray:
        t = self._check_t(t)
        cached = self._cache.get(t)
        if cached is not None:
            return cached
        T = float(self.interpolation(t))
        if self.polish:
            T = self._polished(t, T)
        T1, T2 = self._derivatives(t, T)
        result = np.array([T, T1, T2])
        self._cache[t] = result
        return result
