"""Unit tests for the developability condition, its polynomial form and the curvature sign test."""

import numpy as np
import numpy.polynomial.polynomial as P
import pytest

from devpatch import sample_pairs
from devpatch.condition import (
    condition_polynomial,
    condition_polynomials,
    curvature_signature,
    degree_bound,
    normalised_residual,
    reparam_derivative,
    ruling_normal_at,
    triple_product,
    triple_products,
)
from devpatch.curves import NurbsCurve, classify_pair
from devpatch.errors import SingularDerivativeError, SingularRulingError
from devpatch.models.entities import CurvePairClassification


def _classification(n: int, polynomial: bool = True, parallel: bool = False) -> CurvePairClassification:
    return CurvePairClassification(
        both_polynomial=polynomial,
        planar_parallel=parallel,
        common_plane_normal=(0.0, 0.0, 1.0) if parallel else None,
        effective_degree=n,
    )


def _weight(curve: NurbsCurve, T: float) -> float:
    """Homogeneous weight of a single-span curve at T."""
    return float(P.polyval(T, curve.power_coefficients()[:, 3]))


class TestTripleProduct:
    def test_coplanar_lines_vanish(self):
        c = NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)])
        d = NurbsCurve.from_arrays(1, [(0, 1, 0), (2, 1, 0)])
        assert triple_product(c, d, 0.2, 0.7) == 0.0

    def test_cylinder_vanishes_on_matching_parameters(self, cylinder):
        assert abs(triple_product(*cylinder, 0.3, 0.3)) <= 1e-12

    def test_saddle_is_constant(self, saddle):
        for t, T in [(0.5, 0.5), (0.1, 0.9), (1.0, 0.0)]:
            assert triple_product(*saddle, t, T) == pytest.approx(-1.0)

    def test_matches_numpy_determinant(self, rng):
        c, d = sample_pairs.random_cubic_pair(rng)
        t, T = 0.31, 0.77
        matrix = np.column_stack([c.derivative(t), d.derivative(T), d.evaluate(T) - c.evaluate(t)])
        assert triple_product(c, d, t, T) == pytest.approx(np.linalg.det(matrix), rel=1e-12)

    def test_invariant_under_cyclic_column_permutation(self, rng):
        for _ in range(100):
            c, d = sample_pairs.random_cubic_pair(rng)
            t, T = rng.uniform(0.0, 1.0, 2)
            a, b, r = c.derivative(t), d.derivative(T), d.evaluate(T) - c.evaluate(t)
            value = triple_product(c, d, t, T)
            for columns in ([b, r, a], [r, a, b]):
                assert np.linalg.det(np.column_stack(columns)) == pytest.approx(value, rel=1e-9, abs=1e-12)

    def test_vectorised_matches_scalar(self, rng):
        c, d = sample_pairs.random_rational_pair(rng)
        Ts = np.linspace(0.0, 1.0, 9)
        expected = [triple_product(c, d, 0.4, T) for T in Ts]
        assert np.allclose(triple_products(c, d, 0.4, Ts), expected, rtol=1e-12, atol=1e-14)

    def test_normalised_residual_is_scale_free(self, saddle):
        c, d = saddle
        residual = normalised_residual(c, d, 0.5, 0.5)
        assert 0.0 < residual < 1.0


class TestConditionPolynomial:
    def test_coplanar_pair_is_degenerate(self, planar):
        p = condition_polynomial(*planar, 0.4)
        assert p.degenerate
        assert p.degree() == -1

    def test_cylinder_condition_is_linear_with_root_at_t(self, cylinder):
        p = condition_polynomial(*cylinder, 0.4)
        assert not p.degenerate
        assert p.degree() == 1
        assert abs(p(0.4)) <= 1e-12

    def test_coefficients_are_normalised(self, rng):
        p = condition_polynomial(*sample_pairs.random_cubic_pair(rng), 0.5)
        assert np.abs(p.coefficients).max() == pytest.approx(1.0)

    def test_agrees_with_triple_product_for_polynomial_curves(self, rng):
        c, d = sample_pairs.random_cubic_pair(rng)
        p = condition_polynomial(c, d, 0.6)
        Ts = np.linspace(0.0, 1.0, 50)
        triple = triple_products(c, d, 0.6, Ts)
        assert np.allclose(p(Ts) * p.scale, triple, atol=1e-9 * np.abs(triple).max())

    def test_agrees_with_triple_product_for_rational_curves(self, rng):
        c, d = sample_pairs.random_rational_pair(rng)
        p = condition_polynomial(c, d, 0.25)
        Ts = np.linspace(0.0, 1.0, 50)
        weights = np.array([_weight(d, T) for T in Ts])
        triple = triple_products(c, d, 0.25, Ts) * weights**2
        assert np.allclose(p(Ts) * p.scale, triple, atol=1e-9 * np.abs(triple).max())

    def test_spline_needs_per_span_polynomials(self, spline):
        with pytest.raises(ValueError, match="single-span"):
            condition_polynomial(*spline, 0.5)

    def test_spans_are_tagged_with_their_interval(self, spline):
        polys = condition_polynomials(*spline, 0.5)
        assert [p.domain for p in polys] == [
            pytest.approx((0.0, 1 / 3)),
            pytest.approx((1 / 3, 2 / 3)),
            pytest.approx((2 / 3, 1.0)),
        ]

    def test_spans_agree_in_sign_with_triple_product(self, spline):
        c, d = spline
        for p in condition_polynomials(c, d, 0.3):
            Ts = np.linspace(p.domain[0], p.domain[1], 7)
            triple = triple_products(c, d, 0.3, Ts)
            values = p(Ts)
            big = np.abs(triple) > 1e-9
            assert np.all(np.sign(values[big]) == np.sign(triple[big]))


class TestDegreeBound:
    def test_generic_cubic(self):
        assert degree_bound(_classification(3)) == 4

    def test_polynomial_parallel_planes(self):
        assert degree_bound(_classification(3, parallel=True)) == 2

    def test_rational_parallel_planes_keep_the_generic_bound(self):
        assert degree_bound(_classification(3, polynomial=False, parallel=True)) == 4

    def test_lines(self):
        assert degree_bound(_classification(1)) == 0

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError, match="at least 1"):
            degree_bound(_classification(0))

    def test_observed_degree_respects_bound(self, rng):
        for _ in range(5):
            c, d = sample_pairs.random_cubic_pair(rng)
            bound = degree_bound(classify_pair(c, d))
            for t in np.linspace(0.0, 1.0, 5):
                assert condition_polynomial(c, d, t).degree() <= bound

    def test_planar_parallel_degree_drops(self, rng):
        c, d = sample_pairs.random_planar_parallel_pair(rng)
        assert degree_bound(classify_pair(c, d)) == 2
        for t in np.linspace(0.0, 1.0, 5):
            assert condition_polynomial(c, d, t).degree() <= 2


class TestReparamDerivative:
    def test_cylinder_moves_at_unit_speed(self, cylinder):
        assert reparam_derivative(*cylinder, 0.3, 0.3) == pytest.approx(1.0)

    def test_mirrored_pair_runs_backwards(self, mirrored):
        assert reparam_derivative(*mirrored, 0.3, 0.7) == pytest.approx(-1.0)

    def test_scaled_pair_slope(self):
        c, d = sample_pairs.scaled_pair(sx=1.0, sy=1.5)
        t = 0.2
        T = 0.5 - (0.5 - t) / 1.5
        assert reparam_derivative(c, d, t, T) == pytest.approx(1 / 1.5)

    def test_straight_d_is_singular(self, saddle):
        with pytest.raises(SingularDerivativeError):
            reparam_derivative(*saddle, 0.5, 0.5)


class TestCurvatureSignature:
    def test_cylinder_is_compatible(self, cylinder):
        c, d = cylinder
        sig = curvature_signature(c, d, 0.3, 0.3, ruling_normal_at(c, d, 0.3, 0.3))
        assert sig.compatible
        assert sig.sign_c == sig.sign_d != 0

    def test_mirrored_pair_is_incompatible(self, mirrored):
        c, d = mirrored
        sig = curvature_signature(c, d, 0.3, 0.7, ruling_normal_at(c, d, 0.3, 0.7))
        assert not sig.compatible
        assert sig.sign_c == -sig.sign_d

    def test_straight_curve_has_zero_sign(self):
        c = sample_pairs.arch()
        d = NurbsCurve.from_arrays(1, [(0, 0, 1), (3, 0, 1)])
        sig = curvature_signature(c, d, 0.3, 0.3, ruling_normal_at(c, d, 0.3, 0.3))
        assert sig.sign_d == 0
        assert not sig.compatible

    def test_ruling_along_tangent_is_singular(self):
        c = NurbsCurve.from_arrays(1, [(0, 0, 0), (1, 0, 0)])
        d = NurbsCurve.from_arrays(1, [(2, 0, 0), (3, 0, 0)])
        with pytest.raises(SingularRulingError):
            ruling_normal_at(c, d, 0.5, 0.5)
