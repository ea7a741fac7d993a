"""Closed-form Poisson integrals against a scipy quadrature oracle, plus the
maximal-operator machinery built on them."""

import math
import random
from fractions import Fraction

import pytest
from scipy.integrate import quad

from limitlab.constructions import build_ml_poisson, build_schnorr_poisson, tent
from limitlab.functions import PiecewiseLinear, StepFunction
from limitlab.intervals import IntervalUnion, RationalInterval
from limitlab.kernels import poisson_eval
from limitlab.kernels import poisson_interval_mass as kernels_mass
from limitlab.poisson import (contraction_gap, maximal_estimate,
                              poisson_integral_pl, poisson_integral_step,
                              radial_trace, weak_type_check)
from limitlab.randomness import covering_test, nest_tail


def quad_oracle(f, x, y):
    """Adaptive quadrature of P_y(x - t) f(t), split at the breakpoints."""
    total = 0.0
    pts = [float(b) for b in f.breakpoints()]
    for a, b in zip(pts, pts[1:]):
        val, err = quad(lambda t: poisson_eval(y, x - t) * float(f.eval(Fraction(t))),
                        a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
        total += val
    return total


def random_step(rng):
    pieces = []
    lo = Fraction(rng.randint(-40, 10), 8)
    for _ in range(rng.randint(1, 4)):
        hi = lo + Fraction(rng.randint(1, 24), 8)
        pieces.append((Fraction(rng.randint(-16, 16), 4), IntervalUnion.single(lo, hi)))
        lo = hi + Fraction(rng.randint(0, 8), 8)
    return StepFunction.from_weighted_regions(pieces)


def random_tent(rng):
    a = Fraction(rng.randint(-32, 16), 8)
    b = a + Fraction(rng.randint(2, 40), 8)
    return tent(RationalInterval(a, b)).scale(Fraction(rng.randint(-12, 12) or 1, 4))


class TestStepIntegral:
    def test_unit_window(self):
        f = StepFunction.indicator(IntervalUnion.single(-1, 1))
        assert poisson_integral_step(f, 0.0, 1.0) == pytest.approx(0.5, abs=1e-15)

    def test_zero_function(self):
        assert poisson_integral_step(StepFunction.zero(), 1.3, 0.5) == 0.0

    def test_against_quadrature_oracle(self):
        rng = random.Random(43)
        for _ in range(15):
            f = random_step(rng)
            x = rng.uniform(-6, 6)
            y = 2.0 ** rng.uniform(-8, 3)
            assert poisson_integral_step(f, x, y) == pytest.approx(
                quad_oracle(f, x, y), abs=1e-9)

    def test_rejects_bad_height(self):
        f = StepFunction.indicator(IntervalUnion.single(0, 1))
        with pytest.raises(ValueError):
            poisson_integral_step(f, 0.0, 0.0)

    def test_sup_and_mass_bounds(self):
        rng = random.Random(47)
        for _ in range(100):
            f = random_step(rng)
            x = rng.uniform(-8, 8)
            y = 2.0 ** rng.uniform(-10, 3)
            value = abs(poisson_integral_step(f, x, y))
            assert value <= float(f.l1_norm()) / (math.pi * y) + 1e-12
            assert value <= float(f.sup_norm()) + 1e-12

    def test_nonnegative_data_gives_nonnegative_values(self):
        rng = random.Random(71)
        for _ in range(50):
            f = random_step(rng).abs()
            assert poisson_integral_step(
                f, rng.uniform(-8, 8), 2.0 ** rng.uniform(-8, 3)) >= 0.0
            g = random_tent(rng).abs()
            assert poisson_integral_pl(
                g, rng.uniform(-8, 8), 2.0 ** rng.uniform(-8, 3)) >= 0.0

    def test_widening_window_recovers_unit_mass(self):
        # mean-value consistency: the value of P[1 on [-R, R]] tends to 1
        vals = [poisson_integral_step(
            StepFunction.indicator(IntervalUnion.single(-R, R)), 0.7, 2.0)
            for R in (2, 16, 128, 8192)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(1.0, abs=2e-4)
        assert vals[-1] == pytest.approx(
            kernels_mass(2.0, -8192 - 0.7, 8192 - 0.7), abs=1e-12)


class TestPiecewiseLinearIntegral:
    def test_plateau_limit(self):
        t = tent(RationalInterval(-1, 1))
        assert poisson_integral_pl(t, 0.0, 2.0 ** -16) == pytest.approx(1.0, abs=1e-4)

    def test_zero_function(self):
        assert poisson_integral_pl(PiecewiseLinear.zero(), 0.3, 1.0) == 0.0

    def test_against_quadrature_oracle(self):
        rng = random.Random(53)
        for _ in range(20):
            f = random_tent(rng)
            x = rng.uniform(-6, 6)
            y = 2.0 ** rng.uniform(-8, 3)
            assert poisson_integral_pl(f, x, y) == pytest.approx(
                quad_oracle(f, x, y), abs=1e-9)

    def test_deep_heights_stay_finite_and_close(self):
        t = tent(RationalInterval(0, 1))
        for j in (20, 25, 30):
            v = poisson_integral_pl(t, 0.5, 2.0 ** -j)
            assert v == pytest.approx(1.0, abs=1e-5)


class TestRadialTrace:
    def test_indicator_converges_to_interior_value(self):
        f = StepFunction.indicator(IntervalUnion.single(0, 1))
        trace = radial_trace(f, 0.5)
        assert trace.entries[-1].value == pytest.approx(1.0, abs=1e-8)

    def test_continuous_data_converges_everywhere(self):
        t = tent(RationalInterval(-2, 2))
        for x in (-1.9, -1.0, 0.0, 0.7, 1.5):
            trace = radial_trace(t, x, [2.0 ** -j for j in range(5, 26, 5)])
            assert trace.entries[-1].value == pytest.approx(
                float(t.eval(Fraction(x))), abs=1e-4)

    def test_window_floor_attached_for_nonnegative_data(self):
        f = StepFunction.indicator(IntervalUnion.single(-1, 1), Fraction(2))
        trace = radial_trace(f, 0.0, [1.0, 0.25])
        for e in trace.entries:
            assert e.bound_active
            assert e.value >= e.lower_bound - 1e-12
        # signed data carries no floor
        g = StepFunction.indicator(IntervalUnion.single(-1, 1), Fraction(-1))
        for e in radial_trace(g, 0.0, [1.0]).entries:
            assert e.lower_bound is None and not e.bound_active

    def test_heights_must_decrease(self):
        f = StepFunction.indicator(IntervalUnion.single(0, 1))
        with pytest.raises(ValueError):
            radial_trace(f, 0.0, [0.5, 0.5])


class TestMaximalEstimate:
    def test_nonnegative_data_equals_plain_max(self):
        f = StepFunction.indicator(IntervalUnion.single(-1, 1))
        grid = [Fraction(1, 2 ** j) for j in range(8)]
        direct = max(poisson_integral_step(f, 0.3, float(y)) for y in grid)
        assert maximal_estimate(f, 0.3, grid) == pytest.approx(direct, abs=1e-14)

    def test_single_height_lower_bound(self):
        f = StepFunction.indicator(IntervalUnion.single(-1, 1))
        assert maximal_estimate(f, 0.0, [Fraction(1)]) >= 0.5 - 1e-15

    def test_monotone_in_grid(self):
        f = random_tent(random.Random(59))
        small = maximal_estimate(f, 0.4, [Fraction(1, 4)])
        large = maximal_estimate(f, 0.4, [Fraction(1, 4), Fraction(1, 32)])
        assert large >= small

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            maximal_estimate(StepFunction.zero(), 0.0, [])


class TestWeakType:
    def test_zero_function(self):
        report = weak_type_check(StepFunction.zero(), 1.0)
        assert report.grid_measure == 0.0 and not report.violation

    def test_bounded_data_has_empty_high_superlevel(self):
        f = StepFunction.indicator(IntervalUnion.single(-1, 1))
        report = weak_type_check(f, 2.0)
        assert report.grid_measure == 0.0
        assert not report.violation

    def test_random_battery_within_bound(self):
        rng = random.Random(61)
        for _ in range(6):
            f = random_tent(rng) if rng.random() < 0.5 else random_step(rng)
            for exp in (-2, 0, 2):
                report = weak_type_check(f, 2.0 ** exp)
                assert not report.violation

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            weak_type_check(StepFunction.zero(), 0.0)


class TestContractionGap:
    def test_identical_stages(self):
        f = StepFunction.indicator(IntervalUnion.single(0, 1))
        gap = contraction_gap([f, f], 0.5, 1.0, 0)
        assert gap.gap == 0.0 and gap.bound == 0.0

    def test_bound_scales_inversely_with_height(self):
        fns = [StepFunction.zero(), StepFunction.indicator(IntervalUnion.single(0, 1))]
        b1 = contraction_gap(fns, 0.0, 1.0, 0).bound
        b2 = contraction_gap(fns, 0.0, 0.5, 0).bound
        assert b2 == pytest.approx(2 * b1, rel=1e-12)

    def test_construction_stages_within_bound(self):
        tc = build_ml_poisson(covering_test(0, 5), s_max=11)
        fns = tc.functions()
        rng = random.Random(67)
        for _ in range(20):
            x = rng.uniform(-1, 1)
            y = 2.0 ** rng.uniform(-8, 1)
            n = rng.randint(0, len(fns) - 2)
            gap = contraction_gap(fns, x, y, n)
            assert gap.gap <= gap.bound + 1e-9

    def test_step_stages_within_bound(self):
        sc = build_schnorr_poisson(nest_tail(covering_test(0, 8)), m_max=6)
        fns = sc.functions()
        for y in (1.0, 0.125):
            for n in (0, 3):
                gap = contraction_gap(fns, 0.2, y, n)
                assert gap.gap <= gap.bound + 1e-9
