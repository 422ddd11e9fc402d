"""Tests for the quadrature helpers."""

import math

import numpy as np
import pytest

from stochimpact_cli.src.core.exceptions import NonConvergence
from stochimpact_cli.src.engine.quadrature import gauss_legendre_2d, integrate_adaptive_simpson


class TestAdaptiveSimpson:
    def test_polynomial_is_exact(self):
        value, error = integrate_adaptive_simpson(lambda x: 3 * x * x, 0.0, 2.0)
        assert value == pytest.approx(8.0, rel=1e-14)
        assert error < 1e-10

    def test_exponential(self):
        value, _ = integrate_adaptive_simpson(math.exp, 0.0, 1.0, tol=1e-12)
        assert value == pytest.approx(math.e - 1.0, rel=1e-12)

    def test_sharp_boundary_layer(self):
        value, _ = integrate_adaptive_simpson(lambda s: 40.0 * math.exp(40.0 * (s - 1)), 0, 1)
        assert value == pytest.approx(-math.expm1(-40.0), rel=1e-9)

    def test_reversed_and_empty_intervals(self):
        forward, _ = integrate_adaptive_simpson(math.cos, 0.0, 1.0)
        backward, _ = integrate_adaptive_simpson(math.cos, 1.0, 0.0)
        assert backward == pytest.approx(-forward)
        assert integrate_adaptive_simpson(math.cos, 0.5, 0.5) == (0.0, 0.0)

    def test_non_convergence(self):
        with pytest.raises(NonConvergence):
            integrate_adaptive_simpson(
                lambda x: math.sin(1.0 / x) if x else 0.0, 0.0, 1.0, tol=1e-14, max_depth=4
            )


class TestGaussLegendre2D:
    def test_gaussian_mass(self):
        def density(x, y):
            return np.exp(-0.5 * (x * x + y * y)) / (2.0 * math.pi)

        mass = gauss_legendre_2d(density, (-8.0, 8.0), (-8.0, 8.0), n_nodes=64)
        assert mass == pytest.approx(1.0, rel=1e-12)

    def test_separable_polynomial(self):
        value = gauss_legendre_2d(lambda x, y: x * y * y, (0.0, 1.0), (0.0, 3.0), n_nodes=4)
        assert value == pytest.approx(0.5 * 9.0)
