"""Dirichlet, Fejer, and Poisson kernels.

Point values come from the closed forms

    D_N(x) = sin((N + 1/2) x) / sin(x/2)
    F_N(x) = (1/(N+1)) (sin((N+1)x/2) / sin(x/2))^2
    P_y(x) = (1/pi) y / (x^2 + y^2)

with the removable singularities of the trigonometric forms handled by
falling back to the defining coefficient sums wherever |sin(x/2)| is tiny.
Coefficient objects (fejer_coeffs) are exact rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import quadrature
from .trig import TrigPoly

SIN_HALF_FLOOR = 1e-8


def _scalar_or_array(x, out):
    return float(out[0]) if out.shape == (1,) and np.isscalar(x) else out


def dirichlet_eval(n_cut: int, x):
    """D_N(x) = sum_{|m| <= N} e^{imx}, evaluated as a real number."""
    if n_cut < 0:
        raise ValueError("kernel order must be >= 0")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    half = np.sin(xs / 2.0)
    safe = np.abs(half) >= SIN_HALF_FLOOR
    out = np.empty_like(xs)
    out[safe] = np.sin((n_cut + 0.5) * xs[safe]) / half[safe]
    if not safe.all():
        out[~safe] = _dirichlet_sum(n_cut, xs[~safe])
    return _scalar_or_array(x, out)


def _dirichlet_sum(n_cut: int, xs: np.ndarray) -> np.ndarray:
    total = np.ones_like(xs)
    for m in range(1, n_cut + 1):
        total += 2.0 * np.cos(m * xs)
    return total


def fejer_eval(n_cut: int, x):
    """F_N(x), nonnegative, equal to the mean of D_0 .. D_N."""
    if n_cut < 0:
        raise ValueError("kernel order must be >= 0")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    half = np.sin(xs / 2.0)
    safe = np.abs(half) >= SIN_HALF_FLOOR
    out = np.empty_like(xs)
    ratio = np.sin((n_cut + 1) * xs[safe] / 2.0) / half[safe]
    out[safe] = ratio * ratio / (n_cut + 1)
    if not safe.all():
        out[~safe] = _fejer_sum(n_cut, xs[~safe])
    return _scalar_or_array(x, out)


def _fejer_sum(n_cut: int, xs: np.ndarray) -> np.ndarray:
    total = np.ones_like(xs)
    for m in range(1, n_cut + 1):
        total += 2.0 * (1.0 - m / (n_cut + 1)) * np.cos(m * xs)
    return total


def fejer_coeffs(n_cut: int) -> TrigPoly:
    """Exact coefficient map of F_N: 1 - |n|/(N+1) on |n| <= N, 0 beyond."""
    if n_cut < 0:
        raise ValueError("kernel order must be >= 0")
    coeffs = {
        n: Fraction(n_cut + 1 - abs(n), n_cut + 1)
        for n in range(-n_cut, n_cut + 1)
    }
    return TrigPoly.from_coeffs(coeffs, exact=True)


def poisson_eval(y: float, x):
    """P_y(x) for y > 0; positive, symmetric, peaked at 1/(pi y)."""
    if y <= 0:
        raise ValueError("Poisson kernel height y must be positive")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = (y / math.pi) / (xs * xs + y * y)
    return _scalar_or_array(x, out)


def stable_atan_diff(u, v):
    """arctan(u) - arctan(v) without cancellation when u and v share sign.

    For u*v > 0 the identity arctan(u) - arctan(v) = arctan((u-v)/(1+uv))
    applies with no branch correction and keeps full precision even when
    both arguments are huge (as along radial traces with y -> 0).
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    same_sign = u * v > 0
    denom = np.where(same_sign, 1.0 + u * v, 1.0)  # dummy where unused
    return np.where(
        same_sign,
        np.arctan((u - v) / denom),
        np.arctan(u) - np.arctan(v),
    )


def poisson_interval_mass(y: float, a: float, b: float) -> float:
    """Exact-antiderivative mass (1/pi)(arctan(b/y) - arctan(a/y)).

    Accepts infinite endpoints; the full-line mass is exactly 1.
    """
    if y <= 0:
        raise ValueError("Poisson kernel height y must be positive")
    if a > b:
        raise ValueError("interval endpoints out of order")
    if math.isinf(a) and math.isinf(b):
        return 1.0
    if math.isinf(b):
        return 0.5 - math.atan(a / y) / math.pi
    if math.isinf(a):
        return math.atan(b / y) / math.pi + 0.5
    return float(stable_atan_diff(b / y, a / y)) / math.pi


def fejer_lp_ratio(n_cut: int, p: float, tol: float = 1e-9,
                   max_panels: int = 1 << 15) -> float:
    """||F_N||_p / (N+1)^{1-1/p} by controlled-error quadrature.

    The ratio stays within fixed constants for all N, which is what makes
    the norm of a scaled kernel sum summable; this function is how those
    constants are measured rather than assumed.  An exhausted panel budget
    raises QuadratureError rather than returning a doubtful number.
    """
    if n_cut < 0:
        raise ValueError("kernel order must be >= 0")
    if p <= 1:
        raise ValueError("p must exceed 1")

    def integrand(x):
        return fejer_eval(n_cut, x) ** p

    norm = quadrature.integrate(integrand, -math.pi, math.pi, tol=tol,
                                max_panels=max_panels) ** (1.0 / p)
    return norm / (n_cut + 1) ** (1.0 - 1.0 / p)


def fejer_ratio_constant(p: float, n_range=range(1, 65), tol: float = 1e-9) -> float:
    """Empirical two-sided constant for the L^p norm-growth equivalence.

    Returns the smallest A >= 1 with A^{-1} <= ratio(N) <= A over the
    sampled orders, where ratio(N) = ||F_N||_p / (N+1)^{1-1/p}.
    """
    ratios = [fejer_lp_ratio(n, p, tol) for n in n_range]
    return max(max(ratios), 1.0 / min(ratios), 1.0)
