"""Registry of quantitative bound checks.

Each entry verifies one inequality or identity the constructions are built
around, at desk scale, and reports pass/fail with the numbers that were
compared.  Exact rational comparisons are marked "exact" in the details;
float comparisons state their tolerance.  verify_all runs the registry
under size caps; a cap of 0 skips the entries that need that stage budget.

The `corrupt` hook exists for negative-control testing: it perturbs one
computed value on its way into a named check so the harness can confirm
that a broken identity is actually caught and named.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, asdict
from fractions import Fraction

import numpy as np

from . import kernels, quadrature
from .constructions import (build_fourier_divergent, build_ml_poisson,
                            build_schnorr_poisson, tent)
from .functions import StepFunction
from .intervals import IntervalUnion, RationalInterval
from .poisson import (contraction_gap, poisson_integral,
                      poisson_integral_step, weak_type_check)
from .randomness import (covering_test, integral_test_partial, nest_tail,
                         schnorr_test_from_poisson, simple_test_from_approx)
from .trig import TrigPoly, l2_norm

SQRT2 = math.sqrt(2.0)
BETA_UNIT = 4.0 / math.pi ** 2  # divergence floor per unit amplitude

DEFAULT_TOLERANCES = {
    "kernel_eval": 1e-9,       # closed form vs coefficient sum
    "quadrature": 1e-9,        # controlled-error integration
    "floor": 1e-9,             # stage floors at covered points
    "radial_floor": 1e-6,      # Poisson lower bounds along traces
    "chain": 1e-6,             # combined convergence-chain slack
}


@dataclass
class Caps:
    """Size limits for a verify_all run; 0 disables the checks needing it."""

    kernel_n_max: int = 64
    lower_bound_n_max: int = 200
    grid_points: int = 1000
    n_max: int = 3             # Fourier construction stages
    m_max: int = 12            # step construction stages
    s_max: int = 21            # tent construction stages
    k_max: int = 3             # lemma-derived test stages
    samples: int = 200         # random (x, y) samples for pointwise bounds
    weak_type_count: int = 6   # random functions in the weak-type battery
    seed: int = 0


@dataclass
class CheckResult:
    check_id: str
    module: str
    description: str
    status: str                # "pass" | "fail" | "skipped"
    details: dict = field(default_factory=dict)


def _le_sqrt2_bound(q: Fraction, a: int, b: int, exp: int) -> bool:
    """Exact test of q <= (a + b*sqrt 2) / 2^exp for integers a, b >= 0."""
    t = q * Fraction(2) ** exp - a  # Fraction power keeps exp < 0 exact
    if t <= 0:
        return True
    return t * t <= 2 * b * b


def random_test_functions(seed: int, count: int):
    """Deterministic battery of tents and step functions for bound checks."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        if idx % 2 == 0:
            a = Fraction(rng.randint(-64, 32), 16)
            b = a + Fraction(rng.randint(1, 64), 16)
            w = Fraction(rng.randint(1, 32), 8)
            out.append(tent(RationalInterval(a, b)).scale(w))
        else:
            pieces = []
            lo = Fraction(rng.randint(-64, 16), 16)
            for _ in range(rng.randint(1, 4)):
                hi = lo + Fraction(rng.randint(1, 48), 16)
                v = Fraction(rng.randint(-32, 32), 8)
                if v:
                    pieces.append((v, IntervalUnion.single(lo, hi)))
                lo = hi + Fraction(rng.randint(0, 16), 16)
            out.append(StepFunction.from_weighted_regions(pieces)
                       if pieces else StepFunction.indicator(IntervalUnion.single(0, 1)))
    return out


class VerifyContext:
    """Shared builds for a verify_all run (each construction built once)."""

    def __init__(self, caps: Caps, corrupt: str | None = None):
        self.caps = caps
        self.corrupt = corrupt
        self._cache: dict = {}

    def fourier(self):
        if "fourier" not in self._cache:
            test = covering_test(0, max(self.caps.n_max, 1) + 1)
            self._cache["fourier"] = build_fourier_divergent(
                test, p=2.0, c_mult=1, n_max=self.caps.n_max, point=0)
        return self._cache["fourier"]

    def step(self):
        if "step" not in self._cache:
            test = nest_tail(covering_test(0, self.caps.m_max + 2))
            self._cache["step"] = build_schnorr_poisson(test, self.caps.m_max)
        return self._cache["step"]

    def step_test(self):
        # the nested family the step construction was built on
        return nest_tail(covering_test(0, self.caps.m_max + 2))

    def tents(self):
        if "tents" not in self._cache:
            test = covering_test(0, max((self.caps.s_max - 1) // 2, 1))
            self._cache["tents"] = build_ml_poisson(test, self.caps.s_max)
        return self._cache["tents"]


# ----------------------------------------------------------------------
# kernel checks


def _check_fejer_coefficients(ctx: VerifyContext):
    if ctx.caps.kernel_n_max < 1:
        return None
    for n_cut in range(ctx.caps.kernel_n_max + 1):
        poly = kernels.fejer_coeffs(n_cut)
        for n in range(-n_cut - 2, n_cut + 3):
            got = poly.coefficient(n)
            if ctx.corrupt == "fejer-coeffs" and n == 1:
                got = got + Fraction(1, 1000)
            want = Fraction(max(n_cut + 1 - abs(n), 0), n_cut + 1)
            if got != want:
                return False, {"order": n_cut, "frequency": n,
                               "got": str(got), "want": str(want), "mode": "exact"}
    return True, {"orders": ctx.caps.kernel_n_max + 1, "mode": "exact"}


def _check_fejer_cesaro(ctx: VerifyContext):
    if ctx.caps.kernel_n_max < 1 or ctx.caps.grid_points < 1:
        return None
    xs = np.linspace(-math.pi, math.pi, ctx.caps.grid_points)
    tol = DEFAULT_TOLERANCES["kernel_eval"]
    dirichlet = np.cumsum(
        [kernels.dirichlet_eval(j, xs) for j in range(ctx.caps.kernel_n_max + 1)], axis=0)
    worst = 0.0
    for n_cut in range(ctx.caps.kernel_n_max + 1):
        mean = dirichlet[n_cut] / (n_cut + 1)
        worst = max(worst, float(np.max(np.abs(kernels.fejer_eval(n_cut, xs) - mean))))
    return worst < tol, {"worst_abs_error": worst, "tolerance": tol}


def _check_fejer_lower_bound(ctx: VerifyContext):
    if ctx.caps.lower_bound_n_max < 1:
        return None
    worst_margin = math.inf
    for n_cut in range(1, ctx.caps.lower_bound_n_max + 1):
        edge = math.pi / (n_cut + 1)
        xs = np.linspace(-edge, edge, 100)
        floor = BETA_UNIT * (n_cut + 1)
        margin = float(np.min(kernels.fejer_eval(n_cut, xs))) - floor
        worst_margin = min(worst_margin, margin)
        if margin < 0:
            return False, {"order": n_cut, "deficit": -margin}
    return True, {"orders": ctx.caps.lower_bound_n_max, "worst_margin": worst_margin,
                  "tolerance": 0.0}


def _check_fejer_lp_equivalence(ctx: VerifyContext):
    if ctx.caps.kernel_n_max < 1:
        return None
    ratios = [kernels.fejer_lp_ratio(n, 2.0, DEFAULT_TOLERANCES["quadrature"])
              for n in range(1, ctx.caps.kernel_n_max + 1)]
    constant = max(max(ratios), 1.0 / min(ratios))
    ok = all(1.0 / constant <= r <= constant for r in ratios)
    return ok, {"constant": constant, "ratio_min": min(ratios), "ratio_max": max(ratios)}


def _check_poisson_positivity(ctx: VerifyContext):
    rng = random.Random(ctx.caps.seed)
    samples = max(ctx.caps.samples, 1)
    for _ in range(samples):
        y = 2.0 ** rng.uniform(-20, 4)
        x = rng.uniform(-50, 50)
        if kernels.poisson_eval(y, x) <= 0:
            return False, {"x": x, "y": y}
    return True, {"samples": samples}


def _check_poisson_sup_bound(ctx: VerifyContext):
    rng = random.Random(ctx.caps.seed + 1)
    samples = max(ctx.caps.samples, 1)
    for _ in range(samples):
        y = 2.0 ** rng.uniform(-20, 4)
        x = rng.uniform(-50, 50)
        if kernels.poisson_eval(y, x) > 1.0 / (math.pi * y) + 1e-15:
            return False, {"x": x, "y": y}
    return True, {"samples": samples, "bound": "1/(pi y)"}


def _check_poisson_unit_mass(ctx: VerifyContext):
    tol = DEFAULT_TOLERANCES["quadrature"]
    rng = random.Random(ctx.caps.seed + 2)
    worst = 0.0
    for _ in range(8):
        y = 2.0 ** rng.uniform(-4, 3)
        full = kernels.poisson_interval_mass(y, -math.inf, math.inf)
        if full != 1.0:
            return False, {"y": y, "full_line_mass": full, "mode": "exact-limit"}
        body = quadrature.integrate(lambda x: kernels.poisson_eval(y, x),
                                    -50.0 * y, 50.0 * y, tol=tol)
        tail = 1.0 - kernels.poisson_interval_mass(y, -50.0 * y, 50.0 * y)
        worst = max(worst, abs(body + tail - 1.0))
    return worst < 1e-8, {"worst_abs_error": worst, "tolerance": 1e-8}


def _check_dirichlet_convolution(ctx: VerifyContext):
    if ctx.caps.grid_points < 1:
        return None
    rng = random.Random(ctx.caps.seed + 3)
    tol = 1e-8
    worst = 0.0
    for _ in range(5):
        degree = rng.randint(1, 8)
        coeffs = {n: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                  for n in range(-degree, degree + 1)}
        poly = TrigPoly.from_coeffs(coeffs, exact=False)
        n_cut = rng.randint(0, 8)
        for _ in range(3):
            t = rng.uniform(-math.pi, math.pi)
            direct = poly.partial_sum(n_cut).eval(t)
            conv = quadrature.integrate(
                lambda s: np.real(kernels.dirichlet_eval(n_cut, t - s) * poly.eval(s)),
                -math.pi, math.pi, tol=1e-10) / (2 * math.pi)
            conv_im = quadrature.integrate(
                lambda s: np.imag(kernels.dirichlet_eval(n_cut, t - s) * poly.eval(s)),
                -math.pi, math.pi, tol=1e-10) / (2 * math.pi)
            worst = max(worst, abs(complex(conv, conv_im) - direct))
    return worst < tol, {"worst_abs_error": worst, "tolerance": tol}


# ----------------------------------------------------------------------
# maximal-operator checks


def _check_weak_type(ctx: VerifyContext):
    if ctx.caps.weak_type_count < 1:
        return None
    fns = random_test_functions(ctx.caps.seed, ctx.caps.weak_type_count)
    worst_ratio = 0.0
    for f in fns:
        for exp in range(-3, 4):
            report = weak_type_check(f, 2.0 ** exp)
            if report.violation:
                return False, {"alpha": 2.0 ** exp, "grid_measure": report.grid_measure,
                               "bound": report.bound}
            if report.bound > 0:
                worst_ratio = max(worst_ratio,
                                  report.grid_measure / report.bound)
    return True, {"functions": len(fns), "alphas": "2^-3..2^3",
                  "worst_measure_to_bound": worst_ratio}


def _check_window_floor(ctx: VerifyContext):
    rng = random.Random(ctx.caps.seed + 4)
    samples = max(ctx.caps.samples, 1)
    worst = math.inf
    for _ in range(samples):
        y = 2.0 ** rng.uniform(-20, 3)
        s = rng.uniform(-y / 2, y / 2)
        ratio = kernels.poisson_eval(y, s) * (5 * math.pi * y) / 4.0
        worst = min(worst, ratio)
        if ratio < 1.0 - 1e-12:
            return False, {"y": y, "s": s, "ratio": ratio}
    return True, {"samples": samples, "worst_ratio": worst,
                  "bound": "P_y(s) >= 4/(5 pi y) on |s| <= y/2"}


# ----------------------------------------------------------------------
# Fourier construction checks


def _check_fourier_spectrum(ctx: VerifyContext):
    if ctx.caps.n_max < 0:
        return None
    fc = ctx.fourier()
    for st in fc.stages:
        if any(abs(n) > st.cutoff for n in st.g.coeffs):
            return False, {"stage": st.n, "cutoff": st.cutoff, "mode": "exact"}
        want = (st.n + 1) ** 6
        if st.cutoff != want:
            return False, {"stage": st.n, "cutoff": st.cutoff, "want": want}
    return True, {"stages": len(fc.stages), "cutoffs": fc.cutoffs(), "mode": "exact"}


def _qualifying_stages(fc):
    return [st.n for st in fc.stages
            if 2.0 ** (-st.n - 1) <= math.pi / (st.cutoff + 1)]


def _check_fourier_stage_floor(ctx: VerifyContext):
    if ctx.caps.n_max < 0:
        return None
    fc = ctx.fourier()
    beta = BETA_UNIT * fc.c_mult
    tol = DEFAULT_TOLERANCES["floor"]
    qualifying = _qualifying_stages(fc)
    values = {st.n: float(st.g.eval(0.0).real) for st in fc.stages}
    for n in qualifying:
        if values[n] < beta - tol:
            return False, {"stage": n, "value": values[n], "floor": beta}
    return True, {"floor": beta, "qualifying_stages": qualifying,
                  "stage_values": values, "tolerance": tol}


def _check_fourier_summability(ctx: VerifyContext):
    if ctx.caps.n_max < 0:
        return None
    fc = ctx.fourier()
    norms, majors = fc.summability()
    ok = all(a <= b * (1 + 1e-9) for a, b in zip(norms, majors))
    return ok, {"norm_partials": norms, "majorant_partials": majors,
                "ratio_constant": fc.ratio_constant}


def _check_integral_test_growth(ctx: VerifyContext):
    if ctx.caps.n_max < 1:
        return None
    fc = ctx.fourier()
    beta = BETA_UNIT * fc.c_mult
    tol = DEFAULT_TOLERANCES["floor"]
    taus = fc.stage_polys()
    partials = [integral_test_partial(taus, 0.0, n_terms)
                for n_terms in range(1, len(taus))]
    qualifying = _qualifying_stages(fc)
    start = min(qualifying) if qualifying else 0
    for st in fc.stages:
        if st.n < start:
            continue
        # stage n contributes across tau_{2n} -> tau_{2n+1}
        lo, hi = 2 * st.n, 2 * st.n + 1
        increment = partials[hi - 1] - (partials[lo - 1] if lo >= 1 else 0.0)
        if increment < beta - tol:
            return False, {"stage": st.n, "increment": increment, "floor": beta}
    monotone = all(b >= a - 1e-15 for a, b in zip(partials, partials[1:]))
    return monotone, {"partials": partials, "floor": beta,
                      "first_checked_stage": start}


def _check_integral_test_majorant(ctx: VerifyContext):
    if ctx.caps.n_max < 1:
        return None
    fc = ctx.fourier()
    # quadrature cost grows with the stage degree; two stages already carry
    # the inequality and keep the check fast
    taus = fc.stage_polys()[: 2 * min(ctx.caps.n_max, 2) + 2]
    diffs = [taus[i + 1] - taus[i] for i in range(len(taus) - 1)]
    nonzero = [d for d in diffs if d.coeffs]

    def integrand(ts):
        total = np.zeros(np.shape(ts))
        for d in nonzero:
            total = total + np.abs(np.real(d.eval(ts)))
        return total

    integral = quadrature.integrate(integrand, -math.pi, math.pi, tol=1e-6)
    majorant = math.sqrt(2 * math.pi) * sum(l2_norm(d) for d in diffs)
    return integral <= majorant + 1e-6, {
        "integral": integral, "holder_majorant": majorant, "p": 2.0,
        "stages_integrated": len(taus) - 1}


# ----------------------------------------------------------------------
# step construction checks


def _check_step_mass(ctx: VerifyContext):
    if ctx.caps.m_max < 0:
        return None
    sc = ctx.step()
    for st in sc.stages:
        if st.mass > st.mass_bound:
            return False, {"stage": st.m, "mass": str(st.mass),
                           "bound": str(st.mass_bound), "mode": "exact"}
    return True, {"stages": len(sc.stages), "mode": "exact"}


def _check_step_increment(ctx: VerifyContext):
    if ctx.caps.m_max < 0:
        return None
    sc = ctx.step()
    for st in sc.stages:
        if st.increment_l1 >= st.increment_bound:
            return False, {"stage": st.m, "increment": str(st.increment_l1),
                           "bound": str(st.increment_bound), "mode": "exact"}
    return True, {"stages": len(sc.stages), "mode": "exact"}


def _check_step_limit_mass(ctx: VerifyContext):
    if ctx.caps.m_max < 0:
        return None
    sc = ctx.step()
    masses = [st.mass for st in sc.stages]
    increasing = all(b >= a for a, b in zip(masses, masses[1:]))
    under = all(m <= 8 for m in masses)
    return increasing and under, {
        "final_mass": str(masses[-1]), "limit_bound": 8, "mode": "exact"}


def _check_step_radial_floor(ctx: VerifyContext):
    if ctx.caps.m_max < 10:
        return None
    sc = ctx.step()
    y = 2.0 ** -10
    # smallest stage whose cover fits in a quarter window
    m = next(st.m for st in sc.stages if st.cover.measure() <= Fraction(1, 4096))
    value = poisson_integral_step(sc.stages[m].f, 0.0, y)
    floor = 3.0 * (2.0 - 2.0 ** -1) / (5.0 * math.pi)
    tol = DEFAULT_TOLERANCES["radial_floor"]
    return value >= floor - tol, {
        "stage": m, "y": y, "value": value, "floor": floor, "tolerance": tol}


def _check_ml_contraction(ctx: VerifyContext):
    if ctx.caps.m_max < 2:
        return None
    sc = ctx.step()
    fns = sc.functions()
    rng = random.Random(ctx.caps.seed + 5)
    worst = 0.0
    for _ in range(20):
        x = rng.uniform(-3, 3)
        y = 2.0 ** rng.uniform(-12, 2)
        n = rng.randint(0, len(fns) - 1)
        gap = contraction_gap(fns, x, y, n)  # raises on violation
        if gap.bound:
            worst = max(worst, gap.gap / gap.bound)
    return True, {"pairs": 20, "worst_gap_to_bound": worst}


# ----------------------------------------------------------------------
# lemma-derived stages


def _check_lemma_simple_measure(ctx: VerifyContext):
    if ctx.caps.k_max < 1 or ctx.caps.m_max < 2 * ctx.caps.k_max:
        return None
    fns = ctx.step().functions()
    measures = {}
    for k in range(ctx.caps.k_max + 1):
        stage = simple_test_from_approx(fns, k)
        m = stage.measure()
        measures[k] = str(m)
        if not _le_sqrt2_bound(m, 2, 1, k - 1):
            return False, {"k": k, "measure": str(m),
                           "bound": "(2+sqrt2)/2^(k-1)", "mode": "exact"}
    return True, {"measures": measures, "mode": "exact"}


def _check_lemma_simple_stability(ctx: VerifyContext):
    if ctx.caps.k_max < 1 or ctx.caps.m_max < 2 * ctx.caps.k_max + 2:
        return None
    fns = ctx.step().functions()
    k = 1
    stage = simple_test_from_approx(fns, k)
    limit = len(fns) - 1
    rng = random.Random(ctx.caps.seed + 6)
    checked = 0
    attempts = 0
    while checked < 100 and attempts < 2000:
        attempts += 1
        x = Fraction(rng.randint(-3 * 64, 3 * 64), 64)
        if stage.contains(x):
            continue
        checked += 1
        for n in range(k, (limit - 1) // 2 + 1):
            base = fns[2 * n].eval(x)
            for i in range(2 * n, limit + 1):
                diff = abs(fns[i].eval(x) - base)
                if not _le_sqrt2_bound(diff, 2, 1, n):
                    return False, {"x": str(x), "n": n, "i": i,
                                   "difference": str(diff), "mode": "exact"}
    return True, {"points": checked, "stage_k": k, "mode": "exact"}


def _check_lemma_poisson_measure(ctx: VerifyContext):
    if ctx.caps.k_max < 1 or ctx.caps.m_max < 2 * ctx.caps.k_max:
        return None
    fns = ctx.step().functions()
    rows = {}
    for k in range(1, ctx.caps.k_max + 1):
        stage = schnorr_test_from_poisson(fns, k)
        rows[k] = {"measure": float(stage.measure), "bound": stage.bound,
                   "slack": stage.slack}
        if not stage.within_bound or stage.bisection_failures:
            return False, rows[k] | {"k": k, "failures": stage.bisection_failures}
    return True, {"stages": rows}


def _check_schnorr_chain(ctx: VerifyContext):
    if ctx.caps.m_max < 8 or ctx.caps.k_max < 1:
        return None
    sc = ctx.step()
    fns = sc.functions()
    limit = len(fns) - 1
    k = 1
    blocked = simple_test_from_approx(fns, k).union(
        schnorr_test_from_poisson(fns, k).stage)
    points = sorted({x for f in fns for x in f.breakpoints() if abs(x) <= 3})
    samples = []
    for a, b in zip(points, points[1:]):
        mid = (a + b) / 2
        if not blocked.contains(mid) and b - a > Fraction(1, 64):
            samples.append((mid, float(b - a) / 2))
        if len(samples) >= 3:
            break
    tol = DEFAULT_TOLERANCES["chain"]
    rows = []
    for x, dist in samples:
        for n in range(k, min(3, (limit - 1) // 2) + 1):
            y_exp = max(0, math.ceil(-math.log2(math.pi * dist * 2.0 ** -n / 8.0)))
            y = 2.0 ** -min(y_exp, 12)
            tail = sum(float(poisson_integral((fns[i + 1] - fns[i]).abs(), float(x), y))
                       for i in range(2 * n, limit))
            local = abs(float(poisson_integral(fns[2 * n], float(x), y))
                        - float(fns[2 * n].eval(x)))
            stability = abs(float(fns[limit].eval(x) - fns[2 * n].eval(x)))
            total = abs(float(poisson_integral(fns[limit], float(x), y))
                        - float(fns[limit].eval(x)))
            budget = (6 + 2 * SQRT2) / 2.0 ** n
            rows.append({"x": str(x), "n": n, "y": y, "total": total,
                         "budget": budget, "tail": tail, "local": local,
                         "stability": stability})
            if total > budget + tol:
                return False, rows[-1]
    return True, {"samples": rows, "tolerance": tol}


# ----------------------------------------------------------------------
# tent construction checks


def _check_tents_l1(ctx: VerifyContext):
    if ctx.caps.s_max < 1:
        return None
    tc = ctx.tents()
    for st in tc.stages:
        if st.s % 2 == 1 and st.l1 > st.l1_bound:
            return False, {"stage": st.s, "l1": str(st.l1),
                           "bound": str(st.l1_bound), "mode": "exact"}
    return True, {"stages": len(tc.stages), "mode": "exact"}


def _check_tents_flip_flop(ctx: VerifyContext):
    if ctx.caps.s_max < 2:
        return None
    tc = ctx.tents()
    for st in tc.stages:
        value = st.f.eval(0)
        if st.s % 2 == 0 and value != 0:
            return False, {"stage": st.s, "value": str(value), "mode": "exact"}
        if st.s % 2 == 1:
            covered = any(iv.contains(0) for iv in st.intervals)
            if covered and value <= 0:
                return False, {"stage": st.s, "value": str(value), "mode": "exact"}
    return True, {"stages": len(tc.stages), "mode": "exact"}


def _check_tents_poisson_decay(ctx: VerifyContext):
    if ctx.caps.s_max < 2:
        return None
    tc = ctx.tents()
    rng = random.Random(ctx.caps.seed + 7)
    for _ in range(20):
        st = tc.stages[rng.randint(0, len(tc.stages) - 1)]
        x = rng.uniform(-2, 2)
        y = 2.0 ** rng.uniform(-10, 2)
        value = abs(float(poisson_integral(st.f, x, y)))
        bound = float(st.l1) / (math.pi * y)
        if value > bound + 1e-12:
            return False, {"stage": st.s, "x": x, "y": y,
                           "value": value, "bound": bound}
    odd_l1 = [float(st.l1) for st in tc.stages if st.s % 2 == 1]
    vanishing = all(b <= a for a, b in zip(odd_l1, odd_l1[1:]))
    return vanishing, {"odd_stage_l1": odd_l1, "samples": 20}


CHECKS = [
    ("fejer.coefficients", "kernels",
     "Triangular coefficients 1 - |n|/(N+1) of the Fejer kernel, exactly",
     _check_fejer_coefficients),
    ("fejer.cesaro_mean", "kernels",
     "Closed form equals the mean of the first N+1 Dirichlet kernels on a grid",
     _check_fejer_cesaro),
    ("fejer.lower_bound", "kernels",
     "F_N >= (4/pi^2)(N+1) on [-pi/(N+1), pi/(N+1)], strict",
     _check_fejer_lower_bound),
    ("fejer.lp_equivalence", "kernels",
     "||F_N||_p stays within a fixed constant of (N+1)^(1-1/p)",
     _check_fejer_lp_equivalence),
    ("poisson.positivity", "kernels",
     "P_y(x) > 0 for y > 0",
     _check_poisson_positivity),
    ("poisson.sup_bound", "kernels",
     "P_y(x) <= 1/(pi y)",
     _check_poisson_sup_bound),
    ("poisson.unit_mass", "kernels",
     "P_y integrates to exactly 1 over the line",
     _check_poisson_unit_mass),
    ("dirichlet.partial_sum_convolution", "trig",
     "Convolving with D_N reproduces the N-th partial sum",
     _check_dirichlet_convolution),
    ("pmt.weak_type", "poisson",
     "Superlevel measure of the Poisson maximal operator under (3/alpha)||f||_1",
     _check_weak_type),
    ("poisson.window_floor", "poisson",
     "P_y(s) >= 4/(5 pi y) on the central window |s| <= y/2",
     _check_window_floor),
    ("fourier.spectrum", "counterexamples",
     "Stage n of the divergence construction has spectrum in [-(n+1)^6, (n+1)^6]",
     _check_fourier_spectrum),
    ("fourier.stage_floor", "counterexamples",
     "Stage value at the covered point is at least 4C/pi^2 at qualifying stages",
     _check_fourier_stage_floor),
    ("fourier.summability", "counterexamples",
     "Partial sums of stage norms stay under the measured-constant majorant",
     _check_fourier_summability),
    ("integral_test.growth", "randomness_tests",
     "Difference partial sums at the covered point grow by the stage floor",
     _check_integral_test_growth),
    ("integral_test.holder_majorant", "randomness_tests",
     "Integral of the difference sum under (2pi)^((p-1)/p) times the norm sum",
     _check_integral_test_majorant),
    ("step.mass_bound", "counterexamples",
     "Stage masses under (2^(m+2)-m-3)/2^(m-1), exactly",
     _check_step_mass),
    ("step.increment_bound", "counterexamples",
     "Stage increments strictly under (2m+5)/2^(m+1) in L1, exactly",
     _check_step_increment),
    ("step.limit_mass", "counterexamples",
     "Stage masses increase and stay at most 8, exactly",
     _check_step_limit_mass),
    ("step.radial_floor", "poisson",
     "Poisson value at the covered point at least 3(2 - 2^-1)/(5 pi)",
     _check_step_radial_floor),
    ("ml.contraction", "poisson",
     "Height-y Poisson gap bounded by the L1 stage gap over pi y",
     _check_ml_contraction),
    ("lemma_simple.measure", "randomness_tests",
     "Pointwise-difference stages measure at most (2+sqrt2)/2^(k-1), exactly",
     _check_lemma_simple_measure),
    ("lemma_simple.stability", "randomness_tests",
     "Off stage k, later stage values move at most (2+sqrt2)/2^n",
     _check_lemma_simple_stability),
    ("lemma_poisson.measure", "randomness_tests",
     "Maximal-operator stages measure at most 3(sqrt2+2)/2^k, with scan slack",
     _check_lemma_poisson_measure),
    ("chain.schnorr_convergence", "poisson",
     "Radial values approach boundary values within (6+2sqrt2)/2^n off the stages",
     _check_schnorr_chain),
    ("tents.l1_bound", "counterexamples",
     "Odd tent stages have L1 norm at most (2n+1)/2^n, exactly",
     _check_tents_l1),
    ("tents.flip_flop", "counterexamples",
     "Covered point sees positive odd-stage and zero even-stage values",
     _check_tents_flip_flop),
    ("tents.poisson_decay", "poisson",
     "Poisson values of tent stages under the vanishing L1/(pi y) envelope",
     _check_tents_poisson_decay),
]


def verify_all(caps: Caps | None = None, corrupt: str | None = None) -> list[CheckResult]:
    """Run every registered bound check under the given caps."""
    caps = caps or Caps()
    ctx = VerifyContext(caps, corrupt)
    results = []
    for check_id, module, description, fn in CHECKS:
        try:
            outcome = fn(ctx)
        except Exception as exc:  # a crashed check is a failed check
            results.append(CheckResult(check_id, module, description, "fail",
                                       {"error": f"{type(exc).__name__}: {exc}"}))
            continue
        if outcome is None:
            results.append(CheckResult(check_id, module, description, "skipped", {}))
        else:
            ok, details = outcome
            results.append(CheckResult(check_id, module, description,
                                       "pass" if ok else "fail", details))
    return results


def overall_pass(results: list[CheckResult]) -> bool:
    return all(r.status in ("pass", "skipped") for r in results)


def report_json(results: list[CheckResult]) -> dict:
    return {
        "overall": "pass" if overall_pass(results) else "fail",
        "checks": [asdict(r) for r in results],
    }
