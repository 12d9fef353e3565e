"""Run the developable-patch acceptance checks and print a pass/fail table.

Every check builds its own curve pairs (seeded random cubics or the
canonical constructions in ``devpatch.sample_pairs``), runs the library on
them and compares against an independent reference: a dense sign-change
oracle for roots, closed-form solutions for the canonical pairs, and
Gaussian curvature against the triple-product residual.

Usage:
    python -m evaluation.run_acceptance [--seed 7] [--output results.json]
"""

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.optimize import brentq

# Ensure src/ is importable when running from repo root
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from devpatch import sample_pairs  # noqa: E402
from devpatch.condition import (  # noqa: E402
    condition_polynomial,
    degree_bound,
    reparam_derivative,
    triple_products,
)
from devpatch.curves import classify_pair  # noqa: E402
from devpatch.errors import SingularMetricError  # noqa: E402
from devpatch.patch import (  # noqa: E402
    DevelopablePatch,
    RuledSurface,
    fundamental_forms,
    gaussian_curvature_profile,
    isometry_metrics,
    unroll,
)
from devpatch.roots import annotate_branch, solve_condition, trace_branches  # noqa: E402

RESIDUAL_TOL = 1e-8
CURVATURE_TOL = 1e-8
ORACLE_POINTS = 4096


def _observed_degrees(pairs, n_t: int = 20) -> List[int]:
    return [
        condition_polynomial(c, d, t).degree()
        for c, d in pairs
        for t in np.linspace(0.0, 1.0, n_t)
    ]


def check_generic_degree(rng: np.random.Generator) -> Tuple[bool, str]:
    pairs = [sample_pairs.random_cubic_pair(rng) for _ in range(10)]
    bound = max(degree_bound(classify_pair(c, d)) for c, d in pairs)
    degrees = _observed_degrees(pairs)
    passed = max(degrees) <= 4 and 4 in degrees and bound == 4
    return passed, f"max observed {max(degrees)}, bound {bound}"


def check_planar_parallel_degree(rng: np.random.Generator) -> Tuple[bool, str]:
    pairs = [sample_pairs.random_planar_parallel_pair(rng) for _ in range(10)]
    bounds = {degree_bound(classify_pair(c, d)) for c, d in pairs}
    degrees = _observed_degrees(pairs)
    return max(degrees) <= 2 and bounds == {2}, f"max observed {max(degrees)}, bounds {sorted(bounds)}"


def _oracle(c, d, t: float) -> np.ndarray:
    """Roots of the triple product in T from sign changes on a dense grid."""
    Ts = np.linspace(0.0, 1.0, ORACLE_POINTS + 1)
    values = triple_products(c, d, t, Ts)
    roots = [float(T) for T in Ts[values == 0.0]]
    for i in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
        f = lambda T: float(triple_products(c, d, t, [T])[0])  # noqa: E731
        roots.append(brentq(f, Ts[i], Ts[i + 1], xtol=1e-15))
    return np.sort(roots)


def check_oracle(rng: np.random.Generator) -> Tuple[bool, str]:
    missed = spurious = 0
    worst = 0.0
    for _ in range(50):
        c, d = sample_pairs.random_cubic_pair(rng)
        t = float(rng.uniform(0.0, 1.0))
        found = solve_condition(c, d, t).roots
        expected = _oracle(c, d, t)
        if len(found) != len(expected):
            missed += max(len(expected) - len(found), 0)
            spurious += max(len(found) - len(expected), 0)
            continue
        if len(found):
            worst = max(worst, float(np.abs(found - expected).max()))
    passed = missed == 0 and spurious == 0 and worst <= 1e-8
    return passed, f"missed {missed}, spurious {spurious}, max gap {worst:.1e}"


def check_cylinder(rng: np.random.Generator) -> Tuple[bool, str]:
    c, d = sample_pairs.cylinder_pair(a=float(rng.uniform(1.0, 3.0)))
    branches = trace_branches(c, d)
    if len(branches) != 1 or not branches[0].monotone:
        return False, f"{len(branches)} branches"
    branch = branches[0]
    drift = float(np.abs(branch.Ts - branch.ts).max())
    slopes = np.array([reparam_derivative(c, d, t, T) for t, T in branch.samples])
    profile = gaussian_curvature_profile(DevelopablePatch(c, d, branch))
    passed = (
        drift <= 1e-9
        and profile.max_abs_normalised <= CURVATURE_TOL
        and float(np.abs(slopes - 1.0).max()) <= 1e-6
    )
    return passed, f"|T-t| {drift:.1e}, |K| {profile.max_abs_normalised:.1e}"


def check_det_b(rng: np.random.Generator) -> Tuple[bool, str]:
    worst_sign = worst_relative = 0.0
    samples = 0
    for _ in range(20):
        c, d = sample_pairs.random_cubic_pair(rng)
        surface = RuledSurface(c, d)
        for t, v in rng.uniform(0.0, 1.0, (50, 2)):
            try:
                forms = fundamental_forms(surface, t, v)
            except SingularMetricError:
                continue
            samples += 1
            twist = float((d.derivative(t) - c.derivative(t)) @ forms.normal)
            worst_sign = max(worst_sign, forms.det_B / surface.scale)
            if twist:
                worst_relative = max(worst_relative, abs(forms.det_B + twist**2) / twist**2)
    passed = samples >= 990 and worst_sign <= 1e-12 and worst_relative <= 1e-9
    return passed, f"{samples} samples, max det B/scale {worst_sign:.1e}, rel {worst_relative:.1e}"


def check_monotone_compatibility(rng: np.random.Generator) -> Tuple[bool, str]:
    disagreements = checked = 0
    for k in range(20):
        a = float(rng.uniform(1.0, 3.0))
        sy = float(rng.uniform(1.0, 2.0))
        height = float(rng.uniform(0.5, 2.0))
        build = sample_pairs.scaled_pair if k < 10 else sample_pairs.mirrored_pair
        c, d = build(a=a, sx=1.0, sy=sy, height=height)
        branches = trace_branches(c, d, np.linspace(0.0, 1.0, 65))
        if not branches or branches[0].zero_sign_samples:
            continue
        checked += 1
        if branches[0].monotone != branches[0].curvature_compatible:
            disagreements += 1
    return disagreements == 0 and checked > 0, f"{checked} pairs checked, {disagreements} disagreements"


def _verdicts(surface, branch) -> Tuple[bool, bool]:
    by_residual = branch.max_residual <= RESIDUAL_TOL
    profile = gaussian_curvature_profile(surface, (17, 5))
    return by_residual, profile.max_abs_normalised <= CURVATURE_TOL


def check_verdict_consistency(rng: np.random.Generator) -> Tuple[bool, str]:
    cases = []
    for name in ("cylinder_pair", "cone_pair", "scaled_pair", "quarter_cylinder_pair", "spline_pair"):
        c, d = getattr(sample_pairs, name)()
        branch = trace_branches(c, d, np.linspace(0.0, 1.0, 65))[0]
        cases.append((name, DevelopablePatch(c, d, branch), branch))
    for name, (c, d) in (
        ("saddle_pair", sample_pairs.saddle_pair()),
        ("random_cubic_pair", sample_pairs.random_cubic_pair(rng)),
    ):
        ts = np.linspace(0.0, 1.0, 17)
        cases.append((name, RuledSurface(c, d), annotate_branch(c, d, ts, ts)))

    mismatched = [name for name, surface, branch in cases if len(set(_verdicts(surface, branch))) != 1]
    return not mismatched, f"{len(cases)} cases" + (f", mismatched {mismatched}" if mismatched else "")


def check_unroll(rng: np.random.Generator) -> Tuple[bool, str]:
    worst_edge = worst_area = 0.0
    apex = None
    for c, d in (sample_pairs.cylinder_pair(), sample_pairs.cone_pair()):
        branch = trace_branches(c, d, np.linspace(0.0, 1.0, 65))[0]
        patch = DevelopablePatch(c, d, branch)
        metrics = isometry_metrics(patch, unroll(patch, 65, 9))
        worst_edge = max(worst_edge, metrics.edge_length_error)
        worst_area = max(worst_area, metrics.area_error)
        apex = metrics.apex_concurrency
    passed = worst_edge <= 1e-6 and worst_area <= 1e-6 and apex is not None and apex <= 1e-5
    return passed, f"edge {worst_edge:.1e}, area {worst_area:.1e}, apex {apex if apex is None else f'{apex:.1e}'}"


def check_regularity(rng: np.random.Generator) -> Tuple[bool, str]:
    c, d = sample_pairs.spline_pair()
    ts = np.linspace(0.0, 1.0, 385)
    Ts = np.array([solve_condition(c, d, t).roots[0] for t in ts])
    slopes = np.diff(Ts) / np.diff(ts)
    jumps = np.abs(np.diff(slopes))

    worst = 0.0
    for knot in np.unique(c.knots)[1:-1]:
        j = int(np.argmin(np.abs(ts - knot)))
        at_join = jumps[j - 1 : j + 1].max()
        window = np.r_[jumps[j - 9 : j - 1], jumps[j + 1 : j + 9]]
        worst = max(worst, float(at_join / (window.max() + 1e-12)))
    return worst <= 10.0, f"max join jump / local jump {worst:.2f}"


CHECKS: List[Tuple[int, str, Callable[[np.random.Generator], Tuple[bool, str]], float]] = [
    (1, "degree bound, generic cubics", check_generic_degree, 1.0),
    (2, "degree bound, parallel planes", check_planar_parallel_degree, 1.0),
    (3, "root oracle equivalence", check_oracle, 10.0),
    (4, "cylinder reconstruction", check_cylinder, 0.0),
    (5, "det B non-positive", check_det_b, 0.0),
    (6, "monotone iff compatible", check_monotone_compatibility, 0.0),
    (7, "residual vs curvature verdict", check_verdict_consistency, 0.0),
    (8, "unroll isometry", check_unroll, 0.0),
    (9, "T' regularity at joins", check_regularity, 0.0),
]


def run_acceptance(seed: int = 7, output_file: str = "") -> bool:
    """Run every check; returns True when all pass."""
    results: List[Dict] = []
    print(f"\nRunning {len(CHECKS)} acceptance checks (seed {seed}) ...\n")
    print(f"{'#':>2}  {'Check':<32}  {'Result':<6}  {'Time':>7}  Detail")
    print("-" * 90)

    for number, name, check, budget in CHECKS:
        rng = np.random.default_rng(seed + number)
        start = time.time()
        try:
            passed, detail = check(rng)
        except Exception as e:
            passed, detail = False, f"FAILED - {e}"
        elapsed = time.time() - start
        over = budget and elapsed > budget
        print(
            f"{number:>2}  {name:<32}  {'PASS' if passed else 'FAIL':<6}  {elapsed:>6.2f}s  "
            f"{detail}{'  (over ' + str(budget) + 's budget)' if over else ''}"
        )
        results.append(
            {"check": number, "name": name, "passed": passed, "detail": detail, "time_seconds": round(elapsed, 3)}
        )

    print("-" * 90)
    n_passed = sum(r["passed"] for r in results)
    print(f"{'TOTAL':>36}  {n_passed}/{len(results)} passed")

    if output_file:
        with open(output_file, "w") as f:
            json.dump({"seed": seed, "results": results}, f, indent=2)
        print(f"\nDetailed results saved to {output_file}")
    return n_passed == len(results)


def main():
    parser = argparse.ArgumentParser(description="Run developable-patch acceptance checks")
    parser.add_argument("--seed", type=int, default=7, help="Base seed for the random pairs")
    parser.add_argument("--output", default="", help="Output JSON file for results")
    args = parser.parse_args()
    sys.exit(0 if run_acceptance(args.seed, args.output) else 1)


if __name__ == "__main__":
    main()
