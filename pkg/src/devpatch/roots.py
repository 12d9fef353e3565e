"""Real-root isolation of the condition polynomial and branch continuation in t."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import numpy.polynomial.polynomial as P
from scipy.optimize import brentq

from .condition import (
    condition_polynomials,
    curvature_signature,
    normalised_residual,
    reparam_derivative,
    ruling_normal_at,
)
from .curves import NurbsCurve
from .errors import (
    CurveDomainError,
    DegeneratePolynomialError,
    SingularDerivativeError,
    SingularRulingError,
)
from .models.entities import ConditionPolynomial, ReparamBranch, RootSet

logger = logging.getLogger(__name__)

# |p| at or below this (normalised coefficients) counts as an exact zero
ZERO_TOL = 1e-13

# Subdivision stops below this cell width and reports a root cluster
MIN_CELL_WIDTH = 1e-11
MAX_DEPTH = 64

# |p'| below this marks a root as (numerically) multiple
MULTIPLE_ROOT_TOL = 1e-7

# Roots of one span closer than this are one (multiple) root; rounding near a
# multiple root scatters sub-cell candidates over about 1e-7
CLUSTER_TOL = 1e-6
CLUSTER_ZERO_TOL = 1e-10
# Candidates this close are one root found twice
COINCIDENT_TOL = 1e-10

# Same root reported by two adjacent spans of d
SPAN_MERGE_TOL = 1e-9

DEFAULT_SAMPLES = 257
DEFAULT_REFINE_LEVELS = 4
DEFAULT_REFINE_STEP = 0.05

# Matching window = WINDOW_FACTOR * predicted step + WINDOW_SLACK
WINDOW_FACTOR = 3.0
WINDOW_SLACK = 1e-6


# -- root isolation ------------------------------------------------------


def _bernstein(coefficients: np.ndarray) -> np.ndarray:
    """Power-basis coefficients on [0, 1] converted to Bernstein coefficients."""
    n = len(coefficients) - 1
    return np.array(
        [
            sum(comb(i, k) / comb(n, k) * coefficients[k] for k in range(i + 1))
            for i in range(n + 1)
        ]
    )


def _split(b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """de Casteljau subdivision of a Bernstein polynomial at the cell midpoint."""
    n = len(b) - 1
    work = np.array(b, dtype=float)
    left = np.empty(n + 1)
    right = np.empty(n + 1)
    left[0] = work[0]
    right[n] = work[n]
    for r in range(1, n + 1):
        work[: n - r + 1] = 0.5 * (work[: n - r + 1] + work[1 : n - r + 2])
        left[r] = work[0]
        right[n - r] = work[n - r]
    return left, right


def _sign_variations(b: np.ndarray) -> int:
    signs = np.sign(b[np.abs(b) > 0.0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _polish(p: ConditionPolynomial, x: float, lo: float, hi: float) -> float:
    """One Newton step, kept only if it stays in the cell and lowers |p|."""
    dp = p.derivative_local(x)
    if dp == 0.0:
        return x
    y = x - p.local(x) / dp
    if lo <= y <= hi and abs(p.local(y)) < abs(p.local(x)):
        return y
    return x


def _merge_cluster(p: ConditionPolynomial, cluster: List[float]) -> Tuple[float, bool]:
    """One root for a run of nearby candidates, flagged when the run is a multiple root.

    A run of several candidates is a multiple root smeared by rounding; it
    is placed at the stationary point of p inside the run when p' changes
    sign there, else at the run's median.
    """
    if cluster[-1] - cluster[0] <= COINCIDENT_TOL:
        x = float(np.median(cluster))
        return x, bool(abs(p.derivative_local(x)) < MULTIPLE_ROOT_TOL)

    lo = max(cluster[0] - CLUSTER_TOL, 0.0)
    hi = min(cluster[-1] + CLUSTER_TOL, 1.0)
    x = float(np.median(cluster))
    if p.derivative_local(lo) * p.derivative_local(hi) < 0.0:
        stationary = brentq(p.derivative_local, lo, hi, xtol=1e-15)
        if abs(p.local(stationary)) <= CLUSTER_ZERO_TOL:
            x = stationary
    return x, True


def isolate_roots(p: ConditionPolynomial) -> RootSet:
    """All real roots of ``p`` on its domain.

    Cells of [0, 1] (in the span-local parameter) are bisected while their
    Bernstein coefficients show more than one sign variation. A cell with one
    variation and a sign change across its ends is a bracket handed to
    ``brentq``; a cell that shrinks below ``MIN_CELL_WIDTH`` without settling
    is a root cluster, kept only if ``p`` actually vanishes there.
    Candidates within ``CLUSTER_TOL`` of each other are reported as one
    root flagged multiple.
    """
    if p.degenerate:
        raise DegeneratePolynomialError(
            f"Condition polynomial at t={p.t_value} vanishes identically"
        )
    coefficients = np.asarray(p.coefficients, dtype=float)
    found: List[float] = []

    def value(x: float) -> float:
        return float(P.polyval(x, coefficients))

    if len(coefficients) > 1:
        for x in (0.0, 1.0):
            if abs(value(x)) <= ZERO_TOL:
                found.append(x)

        stack = [(0.0, 1.0, _bernstein(coefficients), 0)]
        while stack:
            lo, hi, b, depth = stack.pop()
            variations = _sign_variations(b)
            if variations == 0:
                continue
            f_lo, f_hi = value(lo), value(hi)
            if variations == 1 and f_lo * f_hi < 0.0:
                root = brentq(value, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
                found.append(_polish(p, root, lo, hi))
                continue
            if hi - lo < MIN_CELL_WIDTH or depth >= MAX_DEPTH:
                mid = 0.5 * (lo + hi)
                if abs(value(mid)) <= 1e-10:
                    found.append(mid)
                continue
            mid = 0.5 * (lo + hi)
            if abs(value(mid)) <= ZERO_TOL:
                found.append(mid)
            left, right = _split(b)
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))

    clusters: List[List[float]] = []
    for x in sorted(found):
        if clusters and x - clusters[-1][-1] <= CLUSTER_TOL:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    if any(len(cluster) > 1 for cluster in clusters):
        logger.debug(
            "Merged %d candidates into %d roots at t=%.6g", len(found), len(clusters), p.t_value
        )

    merged = [_merge_cluster(p, cluster) for cluster in clusters]
    roots = p.to_global(np.array([x for x, _ in merged], dtype=float))
    flags = np.array([flag for _, flag in merged], dtype=bool)
    return RootSet(t_value=p.t_value, roots=np.atleast_1d(roots), multiplicity_flags=flags)


def solve_condition(c: NurbsCurve, d: NurbsCurve, t: float) -> RootSet:
    """Roots in T of the condition at ``t`` across all spans of d."""
    polys = condition_polynomials(c, d, t)
    live = [p for p in polys if not p.degenerate]
    if not live:
        return RootSet(
            t_value=float(t), roots=np.empty(0), multiplicity_flags=np.empty(0, dtype=bool), degenerate=True
        )
    if len(live) < len(polys):
        logger.debug("Skipping %d degenerate spans at t=%.6g", len(polys) - len(live), t)

    pairs: List[Tuple[float, bool]] = []
    for p in live:
        rs = isolate_roots(p)
        pairs.extend(zip(rs.roots.tolist(), rs.multiplicity_flags.tolist()))
    pairs.sort()

    merged: List[Tuple[float, bool]] = []
    for root, flag in pairs:
        if merged and root - merged[-1][0] <= SPAN_MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] or flag)
        else:
            merged.append((root, flag))
    return RootSet(
        t_value=float(t),
        roots=np.array([r for r, _ in merged], dtype=float),
        multiplicity_flags=np.array([f for _, f in merged], dtype=bool),
    )


# -- branch continuation -------------------------------------------------


def annotate_branch(
    c: NurbsCurve,
    d: NurbsCurve,
    ts: Sequence[float],
    Ts: Sequence[float],
    dTs: Optional[Sequence[float]] = None,
    singular_t: Sequence[float] = (),
    degenerate: bool = False,
) -> ReparamBranch:
    """Build a :class:`ReparamBranch` from samples and record its monotonicity and curvature signs.

    Missing derivative estimates are taken from the samples by finite
    differences.
    """
    ts = np.asarray(ts, dtype=float)
    Ts = np.asarray(Ts, dtype=float)
    if ts.shape != Ts.shape or ts.ndim != 1 or len(ts) == 0:
        raise ValueError("Branch needs matching, non-empty t and T sample arrays")
    if len(ts) > 1 and np.any(np.diff(ts) <= 0):
        raise ValueError("Branch t samples must be strictly increasing")

    if dTs is None:
        dTs = np.gradient(Ts, ts) if len(ts) > 1 else np.zeros(1)
    dTs = np.asarray(dTs, dtype=float)

    monotone = len(ts) >= 2 and bool(np.all(np.diff(Ts) > 0))
    compatible = True
    zero_signs = 0
    residual = 0.0
    for t, T in zip(ts, Ts):
        residual = max(residual, normalised_residual(c, d, t, T))
        try:
            normal = ruling_normal_at(c, d, t, T)
        except SingularRulingError:
            zero_signs += 1
            compatible = False
            continue
        sig = curvature_signature(c, d, t, T, normal)
        if sig.sign_c == 0 or sig.sign_d == 0:
            zero_signs += 1
        compatible = compatible and sig.compatible

    return ReparamBranch(
        samples=np.column_stack([ts, Ts]),
        derivative_estimates=dTs,
        monotone=monotone,
        curvature_compatible=compatible,
        t_range=(float(ts[0]), float(ts[-1])),
        T_range=(float(Ts.min()), float(Ts.max())),
        max_residual=float(residual),
        singular_t=tuple(float(x) for x in singular_t),
        zero_sign_samples=zero_signs,
        degenerate=degenerate,
    )


@dataclass
class _OpenBranch:
    ts: List[float] = field(default_factory=list)
    Ts: List[float] = field(default_factory=list)
    dTs: List[Optional[float]] = field(default_factory=list)
    singular: List[float] = field(default_factory=list)

    def slope(self) -> float:
        if self.dTs[-1] is not None:
            return self.dTs[-1]
        if len(self.ts) > 1:
            return (self.Ts[-1] - self.Ts[-2]) / (self.ts[-1] - self.ts[-2])
        return 0.0


class BranchTracer:
    """Samples the condition over t and folds the per-sample roots into branches."""

    def __init__(
        self,
        c: NurbsCurve,
        d: NurbsCurve,
        refine_levels: int = DEFAULT_REFINE_LEVELS,
        refine_step: float = DEFAULT_REFINE_STEP,
        workers: Optional[int] = None,
    ):
        self.c = c
        self.d = d
        self.refine_levels = refine_levels
        self.refine_step = refine_step
        self.workers = workers

    def _solve_all(self, ts: Sequence[float]) -> List[RootSet]:
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(lambda t: solve_condition(self.c, self.d, t), ts))

    def _needs_refinement(self, a: RootSet, b: RootSet) -> bool:
        if a.degenerate or b.degenerate:
            return False
        if len(a) != len(b):
            return True
        if not len(a):
            return False
        gaps = np.abs(a.roots[:, None] - b.roots[None, :]).min(axis=1)
        return bool(gaps.max() > self.refine_step)

    def sample(self, t_samples: Sequence[float]) -> Dict[float, RootSet]:
        """Root sets at every sample, with midpoints inserted where roots move fast."""
        ts = sorted(float(t) for t in t_samples)
        sets = dict(zip(ts, self._solve_all(ts)))
        for level in range(self.refine_levels):
            keys = sorted(sets)
            mids = [
                0.5 * (a + b)
                for a, b in zip(keys[:-1], keys[1:])
                if self._needs_refinement(sets[a], sets[b])
            ]
            if not mids:
                break
            logger.debug("Refinement level %d: %d new samples", level + 1, len(mids))
            sets.update(zip(mids, self._solve_all(mids)))
        return sets

    def _derivative(self, t: float, T: float) -> Optional[float]:
        try:
            return reparam_derivative(self.c, self.d, t, T)
        except SingularDerivativeError:
            return None

    def fold(self, sets: Dict[float, RootSet]) -> List[_OpenBranch]:
        """Greedy nearest-neighbour matching of consecutive root sets."""
        active: List[_OpenBranch] = []
        done: List[_OpenBranch] = []
        for t in sorted(sets):
            rs = sets[t]
            if rs.degenerate:
                continue
            roots = rs.roots.tolist()
            candidates = []
            for bi, branch in enumerate(active):
                dt = t - branch.ts[-1]
                slope = branch.slope()
                predicted = branch.Ts[-1] + slope * dt
                window = WINDOW_FACTOR * float(np.hypot(dt, slope * dt)) + WINDOW_SLACK
                for ri, root in enumerate(roots):
                    gap = abs(root - predicted)
                    if gap <= window:
                        candidates.append((gap, bi, ri))
            candidates.sort()

            taken_branches, taken_roots = set(), set()
            for _, bi, ri in candidates:
                if bi in taken_branches or ri in taken_roots:
                    continue
                taken_branches.add(bi)
                taken_roots.add(ri)
                self._extend(active[bi], t, roots[ri])

            still_active = []
            for bi, branch in enumerate(active):
                (still_active if bi in taken_branches else done).append(branch)
            for ri, root in enumerate(roots):
                if ri not in taken_roots:
                    fresh = _OpenBranch()
                    self._extend(fresh, t, root)
                    still_active.append(fresh)
            active = still_active
        return done + active

    def _extend(self, branch: _OpenBranch, t: float, T: float) -> None:
        dT = self._derivative(t, T)
        if dT is None:
            branch.singular.append(t)
            logger.debug("Singular T' at t=%.6g, T=%.6g; using secant", t, T)
        branch.ts.append(t)
        branch.Ts.append(T)
        branch.dTs.append(dT)

    def _finish(self, branch: _OpenBranch) -> ReparamBranch:
        ts = np.array(branch.ts)
        Ts = np.array(branch.Ts)
        dTs = np.array([np.nan if x is None else x for x in branch.dTs])
        if np.isnan(dTs).any():
            fallback = np.gradient(Ts, ts) if len(ts) > 1 else np.zeros(len(ts))
            dTs = np.where(np.isnan(dTs), fallback, dTs)
        return annotate_branch(self.c, self.d, ts, Ts, dTs, singular_t=branch.singular)

    def trace(self, t_samples: Sequence[float]) -> List[ReparamBranch]:
        ts = np.asarray(t_samples, dtype=float)
        if ts.ndim != 1 or len(ts) < 2:
            raise ValueError("trace_branches needs at least two t samples")
        if np.any(np.diff(ts) <= 0):
            raise ValueError("t samples must be strictly increasing")
        lo, hi = self.c.domain
        if ts[0] < lo or ts[-1] > hi:
            raise CurveDomainError(f"t samples must lie in [{lo}, {hi}]")

        sets = self.sample(ts)
        if all(rs.degenerate for rs in sets.values()):
            return [self._identity_branch(np.array(sorted(sets)))]

        branches = [self._finish(b) for b in self.fold(sets)]
        branches.sort(key=_rank)
        logger.info(
            "Traced %d branches over %d samples (%d monotone)",
            len(branches),
            len(sets),
            sum(b.monotone for b in branches),
        )
        return branches

    def _identity_branch(self, ts: np.ndarray) -> ReparamBranch:
        """Coplanar curves: every T solves the condition, so T(t) = t is taken."""
        logger.info("Condition vanishes identically; returning the identity branch")
        Ts = np.clip(ts, *self.d.domain)
        branch = annotate_branch(self.c, self.d, ts, Ts, np.ones(len(ts)), degenerate=True)
        return branch


def _rank(branch: ReparamBranch):
    return (
        not branch.monotone,
        not branch.curvature_compatible,
        -(branch.T_range[1] - branch.T_range[0]),
        float(branch.Ts[0]),
        float(branch.ts[0]),
    )


def default_samples(n: int = DEFAULT_SAMPLES, domain: Tuple[float, float] = (0.0, 1.0)) -> np.ndarray:
    return np.linspace(domain[0], domain[1], n)


def trace_branches(
    c: NurbsCurve,
    d: NurbsCurve,
    t_samples: Optional[Sequence[float]] = None,
    refine_levels: int = DEFAULT_REFINE_LEVELS,
    refine_step: float = DEFAULT_REFINE_STEP,
    workers: Optional[int] = None,
) -> List[ReparamBranch]:
    """Continuous solution branches T(t) of the developability condition.

    Branches are ranked monotone first, then curvature-compatible, then by
    the length of T range covered. An empty list means the condition has no
    real solution at any sample.
    """
    if t_samples is None:
        t_samples = default_samples(domain=c.domain)
    tracer = BranchTracer(c, d, refine_levels=refine_levels, refine_step=refine_step, workers=workers)
    return tracer.trace(t_samples)
