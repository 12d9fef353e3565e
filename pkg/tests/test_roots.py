"""Unit tests for root isolation and branch continuation."""

import numpy as np
import pytest
from scipy.optimize import brentq

from devpatch import sample_pairs
from devpatch.condition import condition_polynomial, normalised_residual, triple_products
from devpatch.errors import CurveDomainError, DegeneratePolynomialError
from devpatch.models.entities import ConditionPolynomial
from devpatch.roots import annotate_branch, isolate_roots, solve_condition, trace_branches


def _poly(coefficients, domain=(0.0, 1.0)) -> ConditionPolynomial:
    return ConditionPolynomial(
        coefficients=np.asarray(coefficients, dtype=float), t_value=0.0, scale=1.0, domain=domain
    )


def _oracle_roots(c, d, t, n=4097):
    """Sign changes of the triple product on a dense T grid, bisected."""
    Ts = np.linspace(0.0, 1.0, n)
    values = triple_products(c, d, t, Ts)
    roots = []
    for i in np.nonzero(values[:-1] * values[1:] < 0)[0]:
        roots.append(brentq(lambda T: float(triple_products(c, d, t, [T])[0]), Ts[i], Ts[i + 1], xtol=1e-15))
    roots.extend(Ts[values == 0.0].tolist())
    return np.sort(roots)


class TestIsolateRoots:
    def test_linear(self):
        rs = isolate_roots(_poly([-0.4, 1.0]))
        assert rs.roots == pytest.approx([0.4], abs=1e-14)
        assert not rs.multiplicity_flags.any()

    def test_two_simple_roots(self):
        rs = isolate_roots(_poly([0.1875, -1.0, 1.0]))
        assert rs.roots == pytest.approx([0.25, 0.75], abs=1e-14)
        assert not rs.multiplicity_flags.any()

    def test_roots_at_both_ends(self):
        rs = isolate_roots(_poly([0.0, -1.0, 1.0]))
        assert rs.roots == pytest.approx([0.0, 1.0], abs=1e-14)
        assert not rs.multiplicity_flags.any()

    def test_double_root_is_reported_once_and_flagged(self):
        rs = isolate_roots(_poly([0.25, -1.0, 1.0]))
        assert rs.roots == pytest.approx([0.5], abs=1e-9)
        assert rs.multiplicity_flags.tolist() == [True]

    def test_no_real_roots(self):
        assert len(isolate_roots(_poly([1.0, 0.0, 1.0]))) == 0

    def test_roots_outside_the_unit_interval_are_ignored(self):
        # (T + 1)(T - 2)
        assert len(isolate_roots(_poly([-2.0, -1.0, 1.0]))) == 0

    def test_nonzero_constant(self):
        assert len(isolate_roots(_poly([0.5]))) == 0

    def test_span_domain_maps_roots_back(self):
        rs = isolate_roots(_poly([-0.5, 1.0], domain=(0.5, 1.0)))
        assert rs.roots == pytest.approx([0.75], abs=1e-14)

    def test_degenerate_polynomial_raises(self):
        p = ConditionPolynomial(coefficients=np.zeros(1), t_value=0.2, scale=1.0, degenerate=True)
        with pytest.raises(DegeneratePolynomialError, match="t=0.2"):
            isolate_roots(p)

    def test_close_roots_are_separated(self):
        # (T - 0.5)(T - 0.5001)
        coefficients = np.polynomial.polynomial.polyfromroots([0.5, 0.5001])
        rs = isolate_roots(_poly(coefficients))
        assert rs.roots == pytest.approx([0.5, 0.5001], abs=1e-12)

    @pytest.mark.parametrize(
        "roots,expected,flags",
        [
            ([0.3, 0.3, 0.8], [0.3, 0.8], [True, False]),
            ([1 / 3, 1 / 3, 0.7, 0.9], [1 / 3, 0.7, 0.9], [True, False, False]),
            ([0.123456789, 0.123456789], [0.123456789], [True]),
        ],
    )
    def test_inexact_double_root_is_one_root(self, roots, expected, flags):
        coefficients = np.polynomial.polynomial.polyfromroots(roots)
        rs = isolate_roots(_poly(coefficients / np.abs(coefficients).max()))
        assert rs.roots == pytest.approx(expected, abs=1e-7)
        assert rs.multiplicity_flags.tolist() == flags


class TestRootParity:
    """Every grid cell where p changes sign holds an odd number of reported roots."""

    @staticmethod
    def _check(p: ConditionPolynomial, n: int = 1025):
        xs = np.linspace(0.0, 1.0, n)
        values = p(xs)
        roots = isolate_roots(p).roots
        for i in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
            inside = np.count_nonzero((roots > xs[i]) & (roots < xs[i + 1]))
            assert inside % 2 == 1, f"{inside} roots in ({xs[i]}, {xs[i + 1]})"

    def test_random_polynomials(self, rng):
        for _ in range(50):
            coefficients = rng.normal(size=int(rng.integers(2, 9)))
            self._check(_poly(coefficients / np.abs(coefficients).max()))

    def test_polynomials_with_roots_in_the_interval(self, rng):
        for _ in range(50):
            roots = rng.uniform(-0.2, 1.2, int(rng.integers(1, 7)))
            coefficients = np.polynomial.polynomial.polyfromroots(roots)
            self._check(_poly(coefficients / np.abs(coefficients).max()))

    def test_double_roots(self):
        for roots in ([0.3, 0.3, 0.8], [0.1, 0.45, 0.45, 0.7], [0.2, 0.2, 0.6, 0.6, 0.9]):
            coefficients = np.polynomial.polynomial.polyfromroots(roots)
            self._check(_poly(coefficients / np.abs(coefficients).max()))

    def test_condition_polynomials_of_random_pairs(self, rng):
        for _ in range(10):
            c, d = sample_pairs.random_cubic_pair(rng)
            for t in (0.1, 0.5, 0.9):
                self._check(condition_polynomial(c, d, t))


class TestSolveCondition:
    def test_matches_dense_grid_oracle(self, rng):
        for _ in range(10):
            c, d = sample_pairs.random_cubic_pair(rng)
            t = float(rng.uniform(0.0, 1.0))
            expected = _oracle_roots(c, d, t)
            rs = solve_condition(c, d, t)
            assert len(rs) == len(expected)
            assert np.allclose(rs.roots, expected, atol=1e-8)

    def test_rational_pair_matches_oracle(self, rng):
        for _ in range(5):
            c, d = sample_pairs.random_rational_pair(rng)
            expected = _oracle_roots(c, d, 0.5)
            rs = solve_condition(c, d, 0.5)
            assert len(rs) == len(expected)
            assert np.allclose(rs.roots, expected, atol=1e-8)

    def test_spline_roots_have_small_residual(self, spline):
        c, d = spline
        for t in np.linspace(0.0, 1.0, 11):
            rs = solve_condition(c, d, t)
            assert len(rs) == 1
            assert normalised_residual(c, d, t, rs.roots[0]) <= 1e-12

    def test_coplanar_pair_is_degenerate(self, planar):
        rs = solve_condition(*planar, 0.5)
        assert rs.degenerate
        assert len(rs) == 0

    def test_saddle_has_no_roots(self, saddle):
        rs = solve_condition(*saddle, 0.5)
        assert not rs.degenerate
        assert len(rs) == 0


class TestTraceBranches:
    def test_cylinder_gives_identity(self, cylinder):
        branches = trace_branches(*cylinder, np.linspace(0.0, 1.0, 33))
        assert len(branches) == 1
        branch = branches[0]
        assert branch.monotone
        assert branch.curvature_compatible
        assert np.abs(branch.Ts - branch.ts).max() <= 1e-9
        assert branch.max_residual <= 1e-8

    def test_cone_gives_identity(self, cone):
        branch = trace_branches(*cone, np.linspace(0.0, 1.0, 33))[0]
        assert np.abs(branch.Ts - branch.ts).max() <= 1e-9
        assert branch.derivative_estimates == pytest.approx(np.ones(len(branch)), abs=1e-9)

    def test_scaled_pair_is_increasing(self, scaled):
        branch = trace_branches(*scaled, np.linspace(0.0, 1.0, 33))[0]
        assert branch.monotone
        assert branch.curvature_compatible
        assert branch.Ts == pytest.approx(0.5 - (0.5 - branch.ts) / 1.5, abs=1e-9)

    def test_mirrored_pair_runs_backwards(self, mirrored):
        branches = trace_branches(*mirrored, np.linspace(0.0, 1.0, 33))
        assert len(branches) == 1
        branch = branches[0]
        assert not branch.monotone
        assert not branch.curvature_compatible
        assert branch.Ts == pytest.approx(1.0 - branch.ts, abs=1e-9)

    def test_saddle_has_no_branch(self, saddle):
        assert trace_branches(*saddle, np.linspace(0.0, 1.0, 9)) == []

    def test_coplanar_pair_gets_identity_branch(self, planar):
        branches = trace_branches(*planar, np.linspace(0.0, 1.0, 9))
        assert len(branches) == 1
        assert branches[0].degenerate
        assert branches[0].Ts == pytest.approx(branches[0].ts)

    def test_rational_quarter_cylinder(self, quarter_cylinder):
        branch = trace_branches(*quarter_cylinder, np.linspace(0.0, 1.0, 33))[0]
        assert branch.monotone
        assert np.abs(branch.Ts - branch.ts).max() <= 1e-9

    def test_deterministic(self, spline):
        first = trace_branches(*spline, np.linspace(0.0, 1.0, 17))
        second = trace_branches(*spline, np.linspace(0.0, 1.0, 17))
        assert len(first) == len(second)
        for a, b in zip(first, second):
            assert np.array_equal(a.samples, b.samples)

    def test_thread_pool_gives_the_same_branches(self, spline):
        serial = trace_branches(*spline, np.linspace(0.0, 1.0, 17), workers=1)
        pooled = trace_branches(*spline, np.linspace(0.0, 1.0, 17), workers=4)
        assert np.array_equal(serial[0].samples, pooled[0].samples)

    def test_default_sampling(self, cylinder):
        branch = trace_branches(*cylinder)[0]
        assert len(branch) >= 257
        assert branch.t_range == (0.0, 1.0)

    def test_needs_two_samples(self, cylinder):
        with pytest.raises(ValueError, match="at least two"):
            trace_branches(*cylinder, [0.5])

    def test_samples_must_increase(self, cylinder):
        with pytest.raises(ValueError, match="strictly increasing"):
            trace_branches(*cylinder, [0.0, 0.5, 0.4])

    def test_samples_outside_domain(self, cylinder):
        with pytest.raises(CurveDomainError):
            trace_branches(*cylinder, [0.0, 1.5])


class TestAnnotateBranch:
    def test_decreasing_samples_are_not_monotone(self, mirrored):
        ts = np.linspace(0.0, 1.0, 5)
        branch = annotate_branch(*mirrored, ts, 1.0 - ts)
        assert not branch.monotone
        assert branch.derivative_estimates == pytest.approx(-np.ones(5))

    def test_residual_of_wrong_branch(self, saddle):
        ts = np.linspace(0.0, 1.0, 5)
        branch = annotate_branch(*saddle, ts, ts)
        assert branch.max_residual > 0.1

    def test_single_sample_is_not_monotone(self, cylinder):
        assert not annotate_branch(*cylinder, [0.5], [0.5]).monotone

    def test_mismatched_arrays(self, cylinder):
        with pytest.raises(ValueError, match="matching"):
            annotate_branch(*cylinder, [0.0, 1.0], [0.0])

    def test_non_increasing_t(self, cylinder):
        with pytest.raises(ValueError, match="strictly increasing"):
            annotate_branch(*cylinder, [0.0, 0.0], [0.0, 0.1])
