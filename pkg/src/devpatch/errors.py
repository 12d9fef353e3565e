"""Exceptions raised by the developable patch library."""

from typing import Optional


class DevpatchError(Exception):
    """Base class for all library errors."""


class CurveFormatError(DevpatchError, ValueError):
    """Curve data is malformed (knots, weights, control points or file layout)."""


class CurveDomainError(DevpatchError, ValueError):
    """A parameter lies outside the curve or branch domain."""


class DegeneratePolynomialError(DevpatchError, ValueError):
    """The condition polynomial vanishes identically (coplanar bounding curves)."""


class SingularDerivativeError(DevpatchError, ArithmeticError):
    """The T' denominator det(d'', c', d - c) vanishes at the requested point."""


class SingularRulingError(DevpatchError, ArithmeticError):
    """The ruling is parallel to the boundary tangent, so no normal exists."""


class SingularMetricError(DevpatchError, ArithmeticError):
    """The first fundamental form is singular (det G = 0)."""


class NonDevelopableError(DevpatchError):
    """The patch fails the curvature check and cannot be unrolled."""

    def __init__(self, message: str, max_curvature: Optional[float] = None):
        super().__init__(message)
        self.max_curvature = max_curvature


class RegressionError(DevpatchError):
    """The branch is not monotone: rulings cross and form a regression area."""


class BranchFormatError(DevpatchError, ValueError):
    """A branch file is malformed (header, numbers or sample order)."""
