"""Unit tests for NurbsCurve evaluation, span extraction and pair classification."""

import numpy as np
import numpy.polynomial.polynomial as P
import pytest

from devpatch import sample_pairs
from devpatch.curves import NurbsCurve, classify_pair, clamped_uniform_knots
from devpatch.errors import CurveDomainError, CurveFormatError
from devpatch.models.entities import ControlPoint


def _arch() -> NurbsCurve:
    return sample_pairs.arch(2.0)


class TestControlPoint:
    def test_homogeneous_scales_position(self):
        cp = ControlPoint(position=(1.0, 2.0, 3.0), weight=2.0)
        assert np.allclose(cp.homogeneous, [2.0, 4.0, 6.0, 2.0])

    def test_non_positive_weight_rejected(self):
        with pytest.raises(CurveFormatError, match="weight"):
            ControlPoint(position=(0.0, 0.0, 0.0), weight=0.0)

    def test_wrong_dimension_rejected(self):
        with pytest.raises(CurveFormatError, match="3 coordinates"):
            ControlPoint(position=(0.0, 0.0))


class TestConstruction:
    def test_degree_zero_rejected(self):
        with pytest.raises(CurveFormatError, match="degree"):
            NurbsCurve.from_arrays(0, [(0, 0, 0)], knots=[0.0, 1.0])

    def test_too_few_points(self):
        with pytest.raises(CurveFormatError, match="at least 4"):
            NurbsCurve.from_arrays(3, [(0, 0, 0), (1, 0, 0), (2, 0, 0)], knots=[0, 0, 0, 0, 1, 1, 1])

    def test_knot_count_mismatch(self):
        with pytest.raises(CurveFormatError, match="Knot count"):
            NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)], knots=[0, 0, 1])

    def test_decreasing_knots(self):
        with pytest.raises(CurveFormatError, match="non-decreasing"):
            NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0), (2, 0, 0)], knots=[0, 0, 0.7, 0.5, 1])

    def test_unclamped_knots(self):
        with pytest.raises(CurveFormatError, match="clamped"):
            NurbsCurve.from_arrays(2, [(0, 0, 0), (1, 1, 0), (2, 0, 0)], knots=[0, 0.1, 0.2, 0.8, 0.9, 1])

    def test_weight_count_mismatch(self):
        with pytest.raises(CurveFormatError, match="weights"):
            NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)], weights=[1.0])

    def test_knots_normalised_to_unit_interval(self):
        curve = NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)], knots=[2, 2, 4, 4])
        assert curve.domain == (0.0, 1.0)
        assert np.allclose(curve.evaluate(0.5), [0.5, 0.0, 0.0])

    def test_equal_weights_make_a_polynomial_curve(self):
        curve = NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)], weights=[2.0, 2.0])
        assert curve.is_polynomial
        assert np.allclose(curve.weights, [1.0, 1.0])

    def test_arrays_are_read_only(self):
        curve = _arch()
        with pytest.raises(ValueError):
            curve.points[0, 0] = 5.0

    def test_clamped_uniform_knots(self):
        assert clamped_uniform_knots(6, 3) == [0, 0, 0, 0, pytest.approx(1 / 3), pytest.approx(2 / 3), 1, 1, 1, 1]


class TestEvaluation:
    def test_bezier_endpoints_and_midpoint(self):
        curve = _arch()
        assert np.allclose(curve.evaluate(0.0), [0, 0, 0])
        assert np.allclose(curve.evaluate(1.0), [3, 0, 0])
        assert np.allclose(curve.evaluate(0.5), [1.5, 1.5, 0])

    def test_derivatives_match_closed_form(self):
        curve = _arch()
        assert np.allclose(curve.derivative(0.25, 1), [3.0, 3.0, 0.0])
        assert np.allclose(curve.derivative(0.25, 2), [0.0, -12.0, 0.0])

    def test_derivatives_at_matches_scalar_calls(self):
        curve, _ = sample_pairs.quarter_cylinder_pair()
        ts = np.linspace(0.0, 1.0, 7)
        batch = curve.derivatives_at(ts, 2)
        assert batch.shape == (3, 7, 3)
        for i, t in enumerate(ts):
            assert np.allclose(batch[:, i], curve.derivatives(t, 2), rtol=0, atol=1e-14)

    def test_order_above_degree_is_zero(self):
        curve = NurbsCurve.from_arrays(1, [(0, 0, 0), (2, 1, 0)])
        assert np.allclose(curve.derivatives(0.3, 3)[2:], 0.0)

    def test_rational_quarter_circle_has_unit_radius(self):
        curve, _ = sample_pairs.quarter_cylinder_pair()
        for t in np.linspace(0.0, 1.0, 11):
            assert np.linalg.norm(curve.evaluate(t)) == pytest.approx(1.0, abs=1e-14)

    def test_rational_derivatives_match_finite_differences(self):
        curve, _ = sample_pairs.quarter_cylinder_pair()
        t = 0.37
        h = 1e-6
        fd1 = (curve.evaluate(t + h) - curve.evaluate(t - h)) / (2 * h)
        h = 1e-4
        fd2 = (curve.evaluate(t + h) - 2 * curve.evaluate(t) + curve.evaluate(t - h)) / h**2
        assert np.allclose(curve.derivative(t, 1), fd1, atol=1e-8)
        assert np.allclose(curve.derivative(t, 2), fd2, atol=1e-5)

    def test_quarter_circle_arc_length(self):
        curve, _ = sample_pairs.quarter_cylinder_pair()
        assert curve.arc_length() == pytest.approx(np.pi / 2, rel=1e-10)

    def test_outside_domain_raises(self):
        with pytest.raises(CurveDomainError):
            _arch().evaluate(1.5)

    def test_slightly_outside_domain_is_clamped(self):
        assert np.allclose(_arch().evaluate(1.0 + 1e-13), [3, 0, 0])

    def test_unsupported_derivative_order(self):
        with pytest.raises(ValueError, match="order"):
            _arch().derivative(0.5, 3)


class TestBezierSpans:
    def test_spline_splits_into_one_span_per_knot_interval(self):
        curve, _ = sample_pairs.spline_pair()
        spans = curve.bezier_spans()
        assert len(spans) == 3
        assert all(span.is_bezier for span in spans)
        assert spans[0].domain == pytest.approx((0.0, 1 / 3))
        assert spans[-1].domain == pytest.approx((2 / 3, 1.0))

    def test_spans_reproduce_the_curve(self):
        curve, _ = sample_pairs.spline_pair()
        for span in curve.bezier_spans():
            for u in np.linspace(*span.domain, 5):
                assert np.allclose(span.evaluate(u), curve.evaluate(u), atol=1e-13)

    def test_rational_spans_reproduce_the_curve(self, rng):
        points = rng.uniform(-1, 1, (5, 3))
        curve = NurbsCurve.from_arrays(2, points, weights=rng.uniform(0.5, 2.0, 5))
        for span in curve.bezier_spans():
            for u in np.linspace(*span.domain, 4):
                assert np.allclose(span.evaluate(u), curve.evaluate(u), atol=1e-12)

    def test_power_coefficients_evaluate_to_the_curve(self):
        curve = _arch()
        coeffs = curve.power_coefficients()
        for s in (0.0, 0.3, 1.0):
            assert np.allclose(P.polyval(s, coeffs)[:3], curve.evaluate(s))

    def test_power_coefficients_need_a_single_span(self):
        curve, _ = sample_pairs.spline_pair()
        with pytest.raises(ValueError, match="single Bezier span"):
            curve.power_coefficients()


class TestClassifyPair:
    def test_cylinder_pair_is_planar_parallel(self, cylinder):
        result = classify_pair(*cylinder)
        assert result.both_polynomial
        assert result.planar_parallel
        assert result.common_plane_normal == pytest.approx((0.0, 0.0, 1.0))
        assert result.effective_degree == 3

    def test_random_cubics_are_generic(self, rng):
        result = classify_pair(*sample_pairs.random_cubic_pair(rng))
        assert not result.planar_parallel
        assert result.common_plane_normal is None

    def test_rational_pair_is_not_polynomial(self, quarter_cylinder):
        result = classify_pair(*quarter_cylinder)
        assert not result.both_polynomial
        assert result.planar_parallel

    def test_effective_degree_is_the_larger(self, saddle):
        c, _ = saddle
        _, d = sample_pairs.cylinder_pair()
        assert classify_pair(c, d).effective_degree == 3
