"""Quadrature helpers used by the verification oracles."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from stochimpact_cli.src.core.exceptions import NonConvergence

from .model import FloatArray


_SCALE_PANELS = 16
_TINY = 1e-300


def integrate_adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 30,
    relative: bool = True,
) -> tuple[float, float]:
    """Integrate ``f`` on [a, b] with adaptive Simpson and Richardson correction.

    Args:
        f: Scalar integrand.
        a: Lower limit.
        b: Upper limit.
        tol: Error tolerance; relative to the magnitude of the integral when ``relative``.
        max_depth: Maximum bisection depth.
        relative: Interpret ``tol`` relative to a composite-Simpson estimate of the integral.

    Returns:
        Tuple of (integral_value, error_estimate).

    Raises:
        NonConvergence: If some interval still misses its tolerance at ``max_depth``.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        result, error = integrate_adaptive_simpson(f, b, a, tol, max_depth, relative)
        return -result, error

    def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def _adaptive(
        lo: float,
        hi: float,
        f_lo: float,
        f_mid: float,
        f_hi: float,
        whole: float,
        depth: int,
        local_tol: float,
    ) -> tuple[float, float]:
        mid = 0.5 * (lo + hi)
        left_mid = 0.5 * (lo + mid)
        right_mid = 0.5 * (mid + hi)
        f_left = f(left_mid)
        f_right = f(right_mid)
        s_left = _simpson(f_lo, f_left, f_mid, mid - lo)
        s_right = _simpson(f_mid, f_right, f_hi, hi - mid)
        combined = s_left + s_right
        error_estimate = (combined - whole) / 15.0

        if abs(error_estimate) <= local_tol:
            return combined + error_estimate, abs(error_estimate)
        if depth >= max_depth:
            raise NonConvergence(
                f"adaptive Simpson exceeded depth {max_depth} on [{lo:.6g}, {hi:.6g}] "
                f"(error estimate {abs(error_estimate):.3g}, tolerance {local_tol:.3g})"
            )

        left, left_error = _adaptive(
            lo, mid, f_lo, f_left, f_mid, s_left, depth + 1, local_tol / 2.0
        )
        right, right_error = _adaptive(
            mid, hi, f_mid, f_right, f_hi, s_right, depth + 1, local_tol / 2.0
        )
        return left + right, left_error + right_error

    absolute_tol = tol
    if relative:
        nodes = np.linspace(a, b, 2 * _SCALE_PANELS + 1)
        values = np.array([f(float(x)) for x in nodes])
        h = (b - a) / _SCALE_PANELS
        estimate = h / 6.0 * (values[0:-1:2] + 4.0 * values[1::2] + values[2::2]).sum()
        absolute_tol = max(tol * abs(estimate), _TINY)

    mid = 0.5 * (a + b)
    fa, fm, fb = f(a), f(mid), f(b)
    return _adaptive(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), 0, absolute_tol)


def gauss_legendre_2d(
    f: Callable[[FloatArray, FloatArray], FloatArray],
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    n_nodes: int = 96,
) -> float:
    """Tensor-product Gauss-Legendre rule on a rectangle; ``f`` is evaluated vectorized."""
    nodes, weights = leggauss(n_nodes)
    (x0, x1), (y0, y1) = x_range, y_range
    x = 0.5 * (x1 - x0) * nodes + 0.5 * (x1 + x0)
    y = 0.5 * (y1 - y0) * nodes + 0.5 * (y1 + y0)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    ww = np.outer(weights, weights) * 0.25 * (x1 - x0) * (y1 - y0)
    return float(np.sum(ww * f(xx, yy)))
