import math

import numpy as np
import pytest

from limitlab.quadrature import QuadratureError, integrate


def test_sine_integral():
    assert abs(integrate(np.sin, 0.0, math.pi, tol=1e-12) - 2.0) < 1e-11


def test_polynomial():
    val = integrate(lambda x: 3 * x ** 2, -1.0, 2.0, tol=1e-12)
    assert abs(val - 9.0) < 1e-10


def test_empty_interval():
    assert integrate(np.cos, 1.0, 1.0) == 0.0


def test_oscillatory_converges():
    val = integrate(lambda x: np.cos(40 * x), 0.0, math.pi, tol=1e-10)
    assert abs(val) < 1e-9


def test_budget_breach_is_an_error():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sin(1e7 * x), 0.0, 1.0, tol=1e-14, max_panels=8)
