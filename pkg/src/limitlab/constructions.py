"""The three explicit counterexample constructions.

* build_fourier_divergent: a scaled sum of translated Fejer kernels per
  stage of a covering test; its partial-sum jumps at a covered point stay
  above a fixed floor while the stage norms remain summable.
* build_schnorr_poisson: monotone step functions vanishing on the nested
  stages of a test; at a covered point the Poisson integral keeps a
  positive floor at every height even though the stage values there are 0.
* build_ml_poisson: sums of tent functions over enumerated stage intervals
  at odd stages (zero at even stages); L1 norms collapse geometrically, so
  the limit is 0 almost everywhere, yet a covered point sees the stage
  values flip between 0 and at least 1 forever.

Limit objects are never materialized; each construction keeps its stage
records plus closed-form limit accessors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .functions import PiecewiseLinear, StepFunction
from .intervals import IntervalUnion, RationalInterval, frac, frac_str, normalize
from .randomness import TestFamily, enumerate_intervals
from .trig import TrigPoly, l2_norm, lp_norm

MACHINE_EPS = 2.3e-16


# ----------------------------------------------------------------------
# Fourier-divergence construction


@dataclass
class FourierStage:
    n: int
    cutoff: int                     # spectrum of this stage lives in [-cutoff, cutoff]
    centers: list                   # rational translation centers, one per interval
    g: TrigPoly
    f_even: TrigPoly                # partial construction before this stage
    f_odd: TrigPoly                 # partial construction including this stage
    g_norm: float
    norm_majorant: float            # C * A * (2n+1) / (n+1)^(2+2/p)
    eval_error_bound: float         # phase-rounding budget for point values


@dataclass
class FourierConstruction:
    p: float
    c_mult: int
    ratio_constant: float
    stages: list = field(default_factory=list)

    @property
    def final(self) -> TrigPoly:
        return self.stages[-1].f_odd

    def cutoffs(self) -> list[int]:
        return [st.cutoff for st in self.stages]

    def stage_polys(self) -> list[TrigPoly]:
        """f_0, f_1, ..., f_{2 n_max + 1} (even index: before, odd: after)."""
        out = []
        for st in self.stages:
            out.append(st.f_even)
            out.append(st.f_odd)
        return out

    def summability(self) -> tuple[list[float], list[float]]:
        """Partial sums of stage norms next to the majorant partial sums."""
        norms, majors = [], []
        acc = accm = 0.0
        for st in self.stages:
            acc += st.g_norm
            accm += st.norm_majorant
            norms.append(acc)
            majors.append(accm)
        return norms, majors

    def to_json(self) -> dict:
        norms, majors = self.summability()
        return {
            "p": self.p,
            "c": self.c_mult,
            "ratio_constant": self.ratio_constant,
            "stages": [
                {
                    "n": st.n,
                    "cutoff": st.cutoff,
                    "centers": [frac_str(c) for c in st.centers],
                    "g_degree": st.g.degree,
                    "g_norm": st.g_norm,
                    "norm_majorant": st.norm_majorant,
                    "eval_error_bound": st.eval_error_bound,
                    "norm_partial_sum": norms[st.n],
                    "majorant_partial_sum": majors[st.n],
                }
                for st in self.stages
            ],
        }


def stage_cutoff(n: int, p: float) -> int:
    """floor((n+1)^(2p+2)), computed in exact integers when 2p+2 is one."""
    exponent = 2.0 * p + 2.0
    if float(exponent).is_integer():
        return (n + 1) ** int(exponent)
    return int(math.floor((n + 1) ** exponent))


def build_fourier_divergent(test: TestFamily, p: float, c_mult: int, n_max: int,
                            ratio_constant: float | None = None,
                            point=None, norm_tol: float = 1e-9) -> FourierConstruction:
    """Stage n adds g_n = (C/(N_n+1)) sum over the first 2n+1 enumerated
    intervals I of F_{N_n} translated to the midpoint of I, with
    N_n = floor((n+1)^(2p+2)).

    Verified per stage, exactly where the data allows: spectrum inside
    [-N_n, N_n], and the norm against C * A * (2n+1)/(n+1)^(2+2/p) with the
    measured ratio constant A.  When `point` is given, each stage must place
    an enumerated interval containing it.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    if c_mult < 1:
        raise ValueError("the amplitude multiplier must be a positive integer")
    if test.depth < n_max:
        raise ValueError(f"test family depth {test.depth} short of n_max {n_max}")
    if ratio_constant is None:
        from .kernels import fejer_ratio_constant
        ratio_constant = fejer_ratio_constant(p)

    construction = FourierConstruction(p=p, c_mult=c_mult, ratio_constant=ratio_constant)
    f_cur = TrigPoly.zero()
    for n in range(n_max + 1):
        s = 2 * n + 1
        intervals = enumerate_intervals(test, n, s)
        if point is not None and not any(iv.contains(frac(point)) for iv in intervals):
            raise ValueError(
                f"stage {n}: none of the first {s} enumerated intervals covers the point")
        centers = [iv.midpoint for iv in intervals]
        cutoff = stage_cutoff(n, p)

        ms = np.arange(-cutoff, cutoff + 1)
        weights = (1.0 - np.abs(ms) / (cutoff + 1)) * (c_mult / (cutoff + 1))
        phases = np.zeros(len(ms), dtype=complex)
        for c in centers:
            phases += np.exp(-1j * ms * float(c))
        g = TrigPoly({int(m): complex(v) for m, v in zip(ms, weights * phases) if v != 0},
                     exact=False)
        if g.degree > cutoff:
            raise AssertionError(f"stage {n}: spectrum escaped [-{cutoff}, {cutoff}]")

        g_norm = l2_norm(g) if p == 2 else lp_norm(g, p, norm_tol)
        majorant = c_mult * ratio_constant * (2 * n + 1) / (n + 1) ** (2.0 + 2.0 / p)
        if g_norm > majorant * (1 + 1e-9):
            raise AssertionError(
                f"stage {n}: norm {g_norm} exceeds its majorant {majorant}")

        max_center = max((abs(float(c)) for c in centers), default=0.0)
        err = MACHINE_EPS * c_mult * s * (1.0 + cutoff * max_center)
        f_next = f_cur + g
        construction.stages.append(FourierStage(
            n=n, cutoff=cutoff, centers=centers, g=g,
            f_even=f_cur, f_odd=f_next,
            g_norm=g_norm, norm_majorant=majorant, eval_error_bound=err,
        ))
        f_cur = f_next
    return construction


# ----------------------------------------------------------------------
# step construction (radial-limit defect on a nested test)


@dataclass
class StepStage:
    m: int
    cover: IntervalUnion            # the stage the function vanishes on
    f: StepFunction
    mass: Fraction                  # exact integral of f_m
    mass_bound: Fraction            # (2^{m+2} - m - 3) / 2^{m-1}
    increment_l1: Fraction          # exact ||f_{m+1} - f_m||_1
    increment_bound: Fraction       # (2m+5) / 2^{m+1}


@dataclass
class StepConstruction:
    stages: list = field(default_factory=list)
    limit_mass_bound: int = 8

    def functions(self) -> list[StepFunction]:
        return [st.f for st in self.stages]

    def limit_value(self, t) -> Fraction:
        """Pointwise limit of the stage values.

        Points inside every implemented stage see 0.  Any other point t picks
        up 2^-k for every shell index k with |t| <= k + 1, a geometric series
        with exact rational sum 2^{1 - max(0, ceil(|t|) - 1)}.
        """
        t = frac(t)
        deepest = self.stages[-1].cover
        if deepest.contains(t):
            return Fraction(0)
        first_shell = max(0, math.ceil(abs(t)) - 1)
        return Fraction(2, 2 ** first_shell)

    def to_json(self) -> dict:
        return {
            "limit_mass_bound": self.limit_mass_bound,
            "stages": [
                {
                    "m": st.m,
                    "cover": st.cover.to_json(),
                    "mass": frac_str(st.mass),
                    "mass_bound": frac_str(st.mass_bound),
                    "increment_l1": frac_str(st.increment_l1),
                    "increment_bound": frac_str(st.increment_bound),
                }
                for st in self.stages
            ],
        }


def _step_stage_function(test: TestFamily, m: int) -> StepFunction:
    terms = []
    cover = test.stage(m)
    for k in range(m + 1):
        shell = IntervalUnion.single(-(k + 1), k + 1)
        terms.append((Fraction(1, 2 ** k), shell.difference(cover)))
    return StepFunction.from_weighted_regions(terms)


def build_schnorr_poisson(test: TestFamily, m_max: int) -> StepConstruction:
    """Stage m is f_m = sum_{k <= m} 2^-k * indicator([-k-1, k+1] minus stage m).

    Requires a nested family with measures at most 2^-(m+1) (one past the
    plain geometric guarantee, as produced by nest_tail).  Every recorded
    bound is an exact rational comparison: stage mass, increment L1 norm,
    monotonicity, and vanishing on the stage.
    """
    if not test.nested:
        raise ValueError("the step construction needs a nested test family")
    if test.bound_exponent < 1:
        raise ValueError("stage measures must satisfy the 2^-(m+1) guarantee")
    if test.depth < m_max + 1:
        raise ValueError(f"test family depth {test.depth} short of m_max+1 = {m_max + 1}")

    construction = StepConstruction()
    f_cur = _step_stage_function(test, 0)
    for m in range(m_max + 1):
        f_next = _step_stage_function(test, m + 1)
        mass = f_cur.integral()
        mass_bound = Fraction(2 * (2 ** (m + 2) - m - 3), 2 ** m)
        if mass > mass_bound:
            raise AssertionError(f"stage {m}: mass {mass} exceeds {mass_bound}")
        increment = (f_next - f_cur).l1_norm()
        increment_bound = Fraction(2 * m + 5, 2 ** (m + 1))
        if increment >= increment_bound:
            raise AssertionError(
                f"stage {m}: increment {increment} not below {increment_bound}")
        if not f_cur.pointwise_le(f_next):
            raise AssertionError(f"stage {m}: monotonicity failed")
        if not f_cur.restrict(test.stage(m)).is_zero:
            raise AssertionError(f"stage {m}: function does not vanish on its stage")
        construction.stages.append(StepStage(
            m=m, cover=test.stage(m), f=f_cur,
            mass=mass, mass_bound=mass_bound,
            increment_l1=increment, increment_bound=increment_bound,
        ))
        f_cur = f_next
    return construction


# ----------------------------------------------------------------------
# tent construction (flip-flop stages with vanishing L1 norms)


def tent(interval: RationalInterval) -> PiecewiseLinear:
    """The unit plateau bump on [a, b]: ramps up over the first quarter,
    holds 1 over the middle half, ramps down over the last quarter.
    Exact L1 norm 3(b-a)/4."""
    a, b = interval.lo, interval.hi
    if a >= b:
        raise ValueError("tent needs a non-degenerate interval")
    return PiecewiseLinear((
        (a, Fraction(0)),
        ((3 * a + b) / 4, Fraction(1)),
        ((a + 3 * b) / 4, Fraction(1)),
        (b, Fraction(0)),
    ))


@dataclass
class TentStage:
    s: int
    f: PiecewiseLinear              # zero function at even s
    l1: Fraction                    # exact
    l1_bound: Fraction              # (2n+1)/2^n at s = 2n+1, 0 at even s
    intervals: list = field(default_factory=list)


@dataclass
class TentConstruction:
    stages: list = field(default_factory=list)

    def functions(self) -> list[PiecewiseLinear]:
        return [st.f for st in self.stages]

    def increment_partial_sums(self) -> list[Fraction]:
        """Exact partial sums of ||f_s - f_{s+1}||_1 over implemented stages."""
        out = []
        acc = Fraction(0)
        for a, b in zip(self.stages, self.stages[1:]):
            acc += (a.f - b.f).l1_norm()
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {
            "stages": [
                {
                    "s": st.s,
                    "l1": frac_str(st.l1),
                    "l1_bound": frac_str(st.l1_bound),
                    "n_intervals": len(st.intervals),
                }
                for st in self.stages
            ],
        }


def build_ml_poisson(test: TestFamily, s_max: int) -> TentConstruction:
    """Even stages are 0; stage s = 2n+1 sums tents over the first s
    enumerated intervals of test stage n.

    Exact per odd stage: the L1 norm is at most the total enumerated length,
    which is at most (2n+1) times the stage measure, hence at most
    (2n+1)/2^n; and every tent support sits inside the stage."""
    need = (s_max - 1) // 2
    if test.depth < need:
        raise ValueError(f"test family depth {test.depth} short of stage {need}")
    construction = TentConstruction()
    for s in range(s_max + 1):
        if s % 2 == 0:
            construction.stages.append(TentStage(
                s=s, f=PiecewiseLinear.zero(), l1=Fraction(0), l1_bound=Fraction(0)))
            continue
        n = (s - 1) // 2
        intervals = enumerate_intervals(test, n, s)
        f = PiecewiseLinear.zero()
        for iv in intervals:
            f = f + tent(iv)
        l1 = f.l1_norm()
        total_len = sum((iv.length for iv in intervals), Fraction(0))
        stage_measure = test.stage(n).measure()
        l1_bound = Fraction(2 * n + 1, 2 ** n)
        if not (l1 <= total_len <= (2 * n + 1) * stage_measure <= l1_bound):
            raise AssertionError(f"stage {s}: L1 bound chain failed")
        if not normalize(intervals).subset_of(test.stage(n)):
            raise AssertionError(f"stage {s}: enumerated intervals escape the stage")
        construction.stages.append(TentStage(
            s=s, f=f, l1=l1, l1_bound=l1_bound, intervals=intervals))
    return construction
