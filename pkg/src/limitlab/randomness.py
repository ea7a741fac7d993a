"""Finite-stage effective measure tests.

A test is a finite family of interval-union stages with declared geometric
measure bounds, checked exactly at construction.  This module builds the
two families the counterexample constructions need (a point-covering test
and its nested tail closure), enumerates closed rational sub-intervals of a
stage deterministically, accumulates integral-test partial sums, and
derives stages from approximation sequences in two ways: by pointwise
exceedance of consecutive differences, and by superlevel sets of the
Poisson maximal operator applied to consecutive differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .intervals import IntervalUnion, RationalInterval, frac, normalize
from .functions import PiecewiseLinear, StepFunction
from .poisson import DEFAULT_Y_GRID, poisson_integral

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TestFamily:
    """Stages indexed from 0 with the guarantee measure(stage k) <= 2^-(k+bound_exponent)."""

    __test__ = False  # domain object, not a pytest class

    stages: tuple
    kind: str = "ml"
    bound_exponent: int = 0
    nested: bool = False

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if self.kind not in ("ml", "schnorr"):
            raise ValueError(f"unknown test kind {self.kind!r}")
        if self.bound_exponent < 0:
            raise ValueError("bound exponent must be >= 0")
        for k, stage in enumerate(self.stages):
            bound = Fraction(1, 2 ** (k + self.bound_exponent))
            if stage.measure() > bound:
                raise ValueError(f"stage {k} exceeds its declared measure bound {bound}")
        if self.nested:
            for k in range(len(self.stages) - 1):
                if not self.stages[k + 1].subset_of(self.stages[k]):
                    raise ValueError(f"stage {k + 1} is not contained in stage {k}")

    @property
    def depth(self) -> int:
        return len(self.stages) - 1

    def stage(self, k: int) -> IntervalUnion:
        return self.stages[k]

    def covers(self, x) -> bool:
        return all(stage.contains(x) for stage in self.stages)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "bound_exponent": self.bound_exponent,
            "nested": self.nested,
            "stages": [stage.to_json() for stage in self.stages],
        }

    @staticmethod
    def from_json(data: dict) -> "TestFamily":
        return TestFamily(
            tuple(IntervalUnion.from_json(s) for s in data["stages"]),
            data["kind"], data["bound_exponent"], data["nested"],
        )


def covering_test(x, depth: int, exponent_offset: int = 2) -> TestFamily:
    """Nested test whose stage k is the open interval of measure exactly
    2^-(k+offset) centered at x, for k = 0..depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    x = frac(x)
    stages = []
    for k in range(depth + 1):
        h = Fraction(1, 2 ** (k + exponent_offset + 1))
        stages.append(IntervalUnion.single(x - h, x + h, False, False))
    return TestFamily(tuple(stages), kind="schnorr",
                      bound_exponent=exponent_offset, nested=True)


def nest_tail(family: TestFamily) -> TestFamily:
    """Stage n becomes the union of the input stages from n to the depth.

    The output is nested by construction and its measures satisfy the
    geometric tail bound, which costs one exponent of the input guarantee.
    """
    if not family.stages:
        raise ValueError("family must have at least one stage")
    if family.depth == 0:
        return family
    if family.bound_exponent == 0:
        raise ValueError("tail nesting needs at least one exponent of slack")
    tails = []
    acc = IntervalUnion.empty()
    for stage in reversed(family.stages):
        acc = acc.union(stage)
        tails.append(acc)
    tails.reverse()
    return TestFamily(tuple(tails), kind=family.kind,
                      bound_exponent=family.bound_exponent - 1, nested=True)


def _part_subinterval(part: RationalInterval, j: int) -> RationalInterval:
    """j-th closed dyadic sub-interval of a maximal part.

    j = 0 is the middle half of the whole part; later j walk the dyadic
    refinement levels left to right, taking the middle half of each cell.
    Every result lies strictly inside the part, so it is a valid closed
    sub-interval even of an open part.
    """
    if part.is_point:
        return RationalInterval(part.lo, part.lo)
    level = (j + 1).bit_length() - 1
    pos = j - (2 ** level - 1)
    cell_len = part.length / 2 ** level
    cell_lo = part.lo + cell_len * pos
    return RationalInterval(cell_lo + cell_len / 4, cell_lo + 3 * cell_len / 4)


def enumerate_intervals(family: TestFamily, n: int, s: int) -> list[RationalInterval]:
    """First s intervals of the canonical enumeration of closed rational
    sub-intervals of stage n: round-robin over maximal parts left to right,
    refining each part by dyadic subdivision."""
    if not 0 <= n <= family.depth:
        raise ValueError(f"stage index {n} outside 0..{family.depth}")
    if s < 1:
        raise ValueError("must request at least one interval")
    parts = family.stage(n).parts
    if not parts:
        raise ValueError(f"stage {n} is empty")
    out = []
    for r in range(s):
        part = parts[r % len(parts)]
        out.append(_part_subinterval(part, r // len(parts)))
    return out


def integral_test_partial(taus, t: float, n_terms: int) -> float:
    """Partial sum over i < n_terms of |tau_i(t) - tau_{i+1}(t)|.

    `taus` is a sequence of polynomials (or a callable index -> polynomial).
    The result is nondecreasing in n_terms; unbounded growth at a point is
    the finite-stage signature of the covered point's divergence.
    """
    if n_terms < 1:
        raise ValueError("need at least one term")
    at = taus.__getitem__ if hasattr(taus, "__getitem__") else taus
    total = 0.0
    prev = at(0).eval(float(t))
    for i in range(1, n_terms + 1):
        cur = at(i).eval(float(t))
        total += abs(cur - prev)
        prev = cur
    return total


# ----------------------------------------------------------------------
# stages derived from approximation sequences


def _exceedance_parts(g, i: int) -> list[RationalInterval]:
    """Parts of { |g| > 2^{-i/2} }, exact where the data allows.

    Step differences are classified exactly for every i by comparing squared
    values with the rational 2^-i.  Piecewise-linear crossings at odd i have
    irrational locations; those endpoints are rounded outward to dyadics
    (denominator 2^48), so the returned region is a superset with an exact
    rational measure.
    """
    threshold_sq = Fraction(1, 2 ** i)
    if isinstance(g, StepFunction):
        return list(g.exceedance_region(threshold_sq).parts)
    if not isinstance(g, PiecewiseLinear):
        raise TypeError(f"no exceedance region for {type(g).__name__}")

    h = g.abs()
    exact = i % 2 == 0
    eps = Fraction(1, 2 ** (i // 2)) if exact else None
    eps_f = 2.0 ** (-i / 2)
    out = []
    for (x0, y0), (x1, y1) in h.segments():
        above0 = y0 * y0 > threshold_sq
        above1 = y1 * y1 > threshold_sq
        if not above0 and not above1:
            continue
        if above0 and above1:
            out.append(RationalInterval(x0, x1))
            continue
        if exact:
            root = x0 + (eps - y0) * (x1 - x0) / (y1 - y0)
        else:
            rf = float(x0) + (eps_f - float(y0)) * float(x1 - x0) / float(y1 - y0)
            pad = 2.0 ** -44
            if above1:  # exceedance on the right of the crossing: push root left
                root = Fraction(math.floor((rf - pad) * 2 ** 48), 2 ** 48)
            else:
                root = Fraction(math.ceil((rf + pad) * 2 ** 48), 2 ** 48)
            root = min(max(root, x0), x1)
        if above1:
            out.append(RationalInterval(root, x1, root == x0, True))
        else:
            out.append(RationalInterval(x0, root, True, root == x1))
    return out


def simple_test_from_approx(fs: Sequence, k: int, stage_limit: int | None = None) -> IntervalUnion:
    """Stage k of the pointwise-difference test: the union over i >= 2k of
    the regions where |f_i - f_{i+1}| exceeds 2^{-i/2}.

    Off this stage, consecutive-difference telescoping gives the geometric
    stability bound |f_i(x) - f_{2n}(x)| <= (2 + sqrt 2)/2^n for n >= k and
    every implemented i >= 2n.
    """
    if k < 0:
        raise ValueError("stage index must be >= 0")
    limit = len(fs) - 1 if stage_limit is None else stage_limit
    parts = []
    for i in range(2 * k, limit):
        parts.extend(_exceedance_parts(fs[i + 1] - fs[i], i))
    return normalize(parts)


@dataclass
class PoissonTestStage:
    """Superlevel-set stage U_k with its measurement bookkeeping."""

    stage: IntervalUnion
    measure: Fraction
    bound: float              # 3 (sqrt 2 + 2) / 2^k
    slack: float              # grid-induced endpoint uncertainty
    within_bound: bool
    components: int
    bisection_failures: int
    stage_range: tuple[int, int]


def _piece_data(g):
    """(a, b, sup, mass) float rows per piece of nonnegative data g."""
    rows = []
    if isinstance(g, StepFunction):
        for iv, v in g.pieces:
            a, b = float(iv.lo), float(iv.hi)
            rows.append((a, b, float(v), float(v) * (b - a)))
    else:
        for (x0, y0), (x1, y1) in g.segments():
            if y0 == 0 and y1 == 0:
                continue
            a, b = float(x0), float(x1)
            rows.append((a, b, max(float(y0), float(y1)),
                         0.5 * (float(y0) + float(y1)) * (b - a)))
    return rows


def _candidate_windows(rows, eps: float, cell: float = 1.0 / 16):
    """Conservative cover of { sup_y P[g](., y) > eps } by cell windows.

    Uses the per-piece envelope min(sup, mass / (2 pi d)), valid for every
    height y, so pruned cells cannot contain superlevel points.
    """
    mass = sum(r[3] for r in rows)
    if mass == 0 and all(r[2] == 0 for r in rows):
        return []
    lo = min(r[0] for r in rows) - (mass / (math.pi * eps) + cell)
    hi = max(r[1] for r in rows) + (mass / (math.pi * eps) + cell)
    n_cells = int(math.ceil((hi - lo) / cell))
    edges = lo + cell * np.arange(n_cells + 1)
    c0, c1 = edges[:-1], edges[1:]
    ub = np.zeros(n_cells)
    for a, b, sup, m in rows:
        dist = np.maximum(0.0, np.maximum(a - c1, c0 - b))
        with np.errstate(divide="ignore"):
            env = np.where(dist > 0, m / (2 * math.pi * dist), np.inf)
        ub += np.minimum(sup, env)
    keep = ub > eps
    windows = []
    start = None
    for idx in range(n_cells):
        if keep[idx] and start is None:
            start = idx
        elif not keep[idx] and start is not None:
            windows.append((float(edges[start]), float(edges[idx])))
            start = None
    if start is not None:
        windows.append((float(edges[start]), float(edges[-1])))
    return windows


def _superlevel_components(g, eps: float, y_grid, scan_density: int,
                           min_window_points: int, bisect_tol: float):
    """Float components of { max over y_grid of P[g](., y) > eps }, g >= 0."""
    rows = _piece_data(g)
    if not rows:
        return [], 0

    def phi(xs):
        best = np.full(np.shape(xs), -np.inf)
        for y in y_grid:
            best = np.maximum(best, poisson_integral(g, xs, float(y)))
        return best - eps

    failures = 0
    components = []
    for w_lo, w_hi in _candidate_windows(rows, eps):
        n_pts = max(int((w_hi - w_lo) * scan_density), min_window_points) + 1
        xs = np.linspace(w_lo, w_hi, n_pts)
        vals = phi(xs)
        mask = vals > 0
        if not mask.any():
            continue
        idx = 0
        while idx < len(xs):
            if not mask[idx]:
                idx += 1
                continue
            run_start = idx
            while idx < len(xs) and mask[idx]:
                idx += 1
            run_end = idx - 1
            if run_start == 0:
                left = xs[0]
            else:
                left, ok = _bisect_edge(phi, xs[run_start - 1], xs[run_start], bisect_tol)
                failures += 0 if ok else 1
            if run_end == len(xs) - 1:
                right = xs[-1]
            else:
                right, ok = _bisect_edge(phi, xs[run_end + 1], xs[run_end], bisect_tol)
                failures += 0 if ok else 1
            components.append((left, right))
    return components, failures


def _bisect_edge(phi, outside: float, inside: float, tol: float, max_iter: int = 80):
    """Edge of the superlevel set between a non-exceeding and an exceeding
    point; returns the outer end of the final bracket (a superset edge)."""
    for _ in range(max_iter):
        if abs(inside - outside) <= tol:
            return outside, True
        mid = 0.5 * (outside + inside)
        if float(phi(np.array([mid]))[0]) > 0:
            inside = mid
        else:
            outside = mid
    return outside, False


def schnorr_test_from_poisson(fs: Sequence, k: int,
                              y_grid=DEFAULT_Y_GRID,
                              stage_limit: int | None = None,
                              scan_density: int = 4096,
                              min_window_points: int = 512,
                              bisect_tol: float = 1e-9) -> PoissonTestStage:
    """Stage U_k derived from the Poisson maximal operator: the union over
    i >= 2k of { x : max over y_grid of P[|f_i - f_{i+1}|](x, y) > 2^{-i/2} }.

    Superlevel sets are located by a scanned sign search plus bisection on
    each edge, then rounded outward to dyadic rationals, so the returned
    stage is slightly enlarged; `slack` reports the per-edge uncertainty.
    The geometric bound 3(sqrt 2 + 2)/2^k is checked against the exact
    measure of the returned stage.
    """
    if k < 0:
        raise ValueError("stage index must be >= 0")
    if not list(y_grid):
        raise ValueError("y_grid must be nonempty")
    limit = len(fs) - 1 if stage_limit is None else stage_limit
    parts = []
    failures = 0
    n_components = 0
    round_den = 2 ** 36
    for i in range(2 * k, limit):
        g = (fs[i + 1] - fs[i]).abs()
        comps, fails = _superlevel_components(
            g, 2.0 ** (-i / 2), y_grid, scan_density, min_window_points, bisect_tol)
        failures += fails
        n_components += len(comps)
        for lo, hi in comps:
            lo_r = Fraction(math.floor(lo * round_den), round_den)
            hi_r = Fraction(math.ceil(hi * round_den), round_den)
            parts.append(RationalInterval(lo_r, hi_r))
    stage = normalize(parts)
    measured = stage.measure()
    bound = 3.0 * (SQRT2 + 2.0) / 2.0 ** k
    slack = n_components * 2 * (bisect_tol + 1.0 / round_den)
    return PoissonTestStage(
        stage=stage, measure=measured, bound=bound, slack=slack,
        within_bound=float(measured) <= bound + slack,
        components=n_components, bisection_failures=failures,
        stage_range=(2 * k, limit),
    )
