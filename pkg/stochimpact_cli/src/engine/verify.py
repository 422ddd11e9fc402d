"""Numerical oracles for the closed forms in :mod:`strategy`.

Oracles never call the closed form they check: integrals and the discount factor are
recomputed by adaptive quadrature of the growing-exponential expressions, the Riccati and
first-order equations are checked by finite-difference residuals, and the Gaussian kernel is
integrated on a Gauss-Legendre grid.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.core.exceptions import (
    ModelError,
    NotApplicable,
    SingularCovariance,
    StepTooSmall,
)

from .model import LocalCoefficients, MarketModel, PenaltyParams, Regime, refit_penalties
from .model import local_coefficients as _local_coefficients
from .quadrature import gauss_legendre_2d, integrate_adaptive_simpson
from .simulation import InitialState
from .strategy import (
    h0,
    h1,
    h1_limit_products,
    h1_products,
    integrals_I,
    psi0,
    theta0,
)


logger = logging.getLogger("stochimpact.engine.verify")

# growing-exponential oracles stay accurate while gamma * (T - t) is at most this
MAX_GAMMA_TAU = 20.0
INTEGRAL_RTOL = 1e-8
RICCATI_RTOL = 1e-7
TERMINAL_RTOL = 1e-12
PDE_RTOL = 1e-4
MOMENT_RTOL = 1e-6
KAPPA_LIMIT_RTOL = 1e-4
PHI_LIMIT_RTOL = 1e-6
ORDER_TOLERANCE = 0.5

LARGE_KAPPA = 1e8
SMALL_PHI = 1e-12
QUADRATURE_TOL = 1e-10
_PSI_QUADRATURE_TOL = 1e-12
_KERNEL_SPAN = 8.0
_KERNEL_NODES = 96
_FLOOR = 1e-300


@dataclass(frozen=True, slots=True)
class ResidualReport:
    name: str
    grid: str
    max_abs: float
    max_rel: float
    tolerance: float
    passed: bool
    applicable: bool = True
    detail: str = ""

    @classmethod
    def not_applicable(cls, name: str, reason: str) -> ResidualReport:
        return cls(
            name=name,
            grid="",
            max_abs=0.0,
            max_rel=0.0,
            tolerance=0.0,
            passed=True,
            applicable=False,
            detail=reason,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "grid": self.grid,
            "max_abs": self.max_abs,
            "max_rel": self.max_rel,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "applicable": self.applicable,
            "detail": self.detail,
        }


def _report(
    name: str,
    grid: str,
    abs_errors: Sequence[float],
    rel_errors: Sequence[float],
    tolerance: float,
    detail: str = "",
) -> ResidualReport:
    max_abs = float(np.max(np.abs(abs_errors)))
    max_rel = float(np.max(np.abs(rel_errors)))
    passed = bool(np.isfinite(max_rel) and max_rel < tolerance)
    if not passed:
        logger.warning("%s failed: max relative %.3g >= %.3g", name, max_rel, tolerance)
    return ResidualReport(name, grid, max_abs, max_rel, tolerance, passed, True, detail)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), _FLOOR)


def _growth(co: LocalCoefficients, horizon: float) -> Callable[[float], float]:
    gamma = float(co.gamma)
    zeta = float(co.zeta)
    return lambda r: zeta * math.exp(2.0 * gamma * (horizon - r))


def _check_window(co: LocalCoefficients, t: float, horizon: float) -> None:
    if float(co.gamma) * (horizon - t) > MAX_GAMMA_TAU:
        raise NotApplicable(
            f"gamma*(T-t) = {float(co.gamma) * (horizon - t):.3g} exceeds {MAX_GAMMA_TAU:g}"
        )


def oracle_window_start(co: LocalCoefficients, horizon: float) -> float:
    """Earliest t at which the growing-exponential oracles are used."""
    return max(0.0, horizon - MAX_GAMMA_TAU / float(co.gamma))


def quadrature_I(
    i: int,
    t: float,
    co: LocalCoefficients,
    penalties: PenaltyParams,
    tol: float = QUADRATURE_TOL,
) -> float:
    """Adaptive Simpson value of the i-th weighted integral of theta0 against psi0.

    Raises:
        NotApplicable: At phi = 0, or when gamma*(T - t) exceeds the oracle window.
        NonConvergence: If the quadrature does not converge.
    """
    if i not in (1, 2, 3, 4):
        raise ValidationError(f"integral index must be 1..4, got {i!r}", field="i")
    if penalties.regime is Regime.KAPPA_INFINITY_PHI_ZERO:
        raise NotApplicable("integrals are not defined at phi = 0")
    horizon = penalties.T
    if t >= horizon:
        return 0.0
    _check_window(co, t, horizon)

    gamma = float(co.gamma)
    growth = _growth(co, horizon)
    scale = (1.0 - growth(t)) ** 2

    def integrand(s: float) -> float:
        g_s = growth(s)
        base = math.exp(2.0 * gamma * (s - t)) * (1.0 + g_s) / scale
        value = base * (1.0 + g_s) if i <= 2 else base * (1.0 - g_s)  # noqa: PLR2004
        return s * value if i in (1, 3) else value

    value, _ = integrate_adaptive_simpson(integrand, t, horizon, tol=tol)
    return value


def integrals_agreement(
    co: LocalCoefficients,
    penalties: PenaltyParams,
    t_values: Sequence[float],
    tol: float = INTEGRAL_RTOL,
) -> ResidualReport:
    name = f"integrals_I[{penalties.regime.value}]"
    usable = [t for t in t_values if float(co.gamma) * (penalties.T - t) <= MAX_GAMMA_TAU]
    if not usable:
        return ResidualReport.not_applicable(name, "no grid point inside the oracle window")
    abs_errors, rel_errors = [], []
    for t in usable:
        closed = integrals_I(t, co, penalties)
        for i, value in enumerate(closed, start=1):
            oracle = quadrature_I(i, t, co, penalties)
            abs_errors.append(abs(float(value) - oracle))
            rel_errors.append(_relative(float(value), oracle))
    grid = "t in {" + ", ".join(f"{t:.6g}" for t in usable) + "}"
    return _report(name, grid, abs_errors, rel_errors, tol)


def psi0_identity(
    co: LocalCoefficients,
    penalties: PenaltyParams,
    pairs: Sequence[tuple[float, float]],
    tol: float = INTEGRAL_RTOL,
) -> ResidualReport:
    """Compare psi0 with exp(2*gamma*int_t^s theta0) computed by quadrature."""
    name = "psi0_identity"
    horizon = penalties.T
    gamma = float(co.gamma)
    usable = [
        (t, s) for t, s in pairs if t <= s < horizon and gamma * (horizon - t) <= MAX_GAMMA_TAU
    ]
    if not usable:
        return ResidualReport.not_applicable(name, "no (t, s) pair inside the oracle window")
    growth = _growth(co, horizon)

    def theta_raw(r: float) -> float:
        g_r = growth(r)
        return (1.0 + g_r) / (1.0 - g_r)

    abs_errors, rel_errors = [], []
    for t, s in usable:
        integral, _ = integrate_adaptive_simpson(theta_raw, t, s, tol=_PSI_QUADRATURE_TOL)
        oracle = math.exp(2.0 * gamma * integral)
        closed = float(psi0(t, s, co, horizon))
        abs_errors.append(abs(closed - oracle))
        rel_errors.append(_relative(closed, oracle))
    grid = ", ".join(f"({t:.4g}, {s:.4g})" for t, s in usable)
    return _report(name, grid, abs_errors, rel_errors, tol)


def _riccati_step(t: float, co: LocalCoefficients, penalties: PenaltyParams) -> float:
    # resolve the boundary layer near T: width 1/(2*gamma*|theta0|), or T - t when singular
    horizon = penalties.T
    gamma = float(co.gamma)
    match penalties.regime:
        case Regime.NONLIMITING:
            scale = 2.0 * gamma * max(1.0, abs(float(theta0(t, co, horizon))))
        case Regime.KAPPA_INFINITY:
            scale = 2.0 * gamma * max(1.0, 1.0 / math.tanh(gamma * (horizon - t)))
        case Regime.KAPPA_INFINITY_PHI_ZERO:
            scale = 2.0 / (horizon - t)
    return min(1e-6 * horizon, 1e-4 / scale)


def riccati_residual(
    co: LocalCoefficients, penalties: PenaltyParams, n_grid: int = 1000
) -> ResidualReport:
    """Residual of h0' + h0**2/f0 + (g0/f0) h0 + g0**2/(4 f0) - phi on a uniform grid.

    Every regime solves the same equation; the limiting ones with phi read as 0 when
    phi -> 0. The relative residual is scaled by the largest term at each point.
    """
    horizon = penalties.T
    f0, g0 = float(co.f0), float(co.g0)
    phi = 0.0 if penalties.regime is Regime.KAPPA_INFINITY_PHI_ZERO else penalties.phi
    grid = np.linspace(0.0, horizon - 1e-6 * horizon, n_grid)
    abs_errors, rel_errors = [], []
    for t in grid:
        step = _riccati_step(float(t), co, penalties)
        hi, lo = t + step, t - step
        derivative = (float(h0(hi, co, penalties)) - float(h0(lo, co, penalties))) / (hi - lo)
        value = float(h0(t, co, penalties))
        terms = (
            derivative,
            value * value / f0,
            g0 * value / f0,
            g0 * g0 / (4.0 * f0),
            -phi,
        )
        residual = sum(terms)
        abs_errors.append(residual)
        rel_errors.append(abs(residual) / max(max(abs(x) for x in terms), _FLOOR))
    return _report(
        "riccati_residual",
        f"{n_grid} points on [0, {grid[-1]:.9g}], {penalties.regime.value}",
        abs_errors,
        rel_errors,
        RICCATI_RTOL,
    )


def terminal_check(co: LocalCoefficients, penalties: PenaltyParams) -> ResidualReport:
    error = abs(float(h0(penalties.T, co, penalties)) + penalties.kappa)
    scaled = error / max(1.0, penalties.kappa)
    return _report("h0_terminal", f"t = {penalties.T:g}", [error], [scaled], TERMINAL_RTOL)


@dataclass(frozen=True, slots=True)
class FiniteDifferenceSteps:
    dt: float
    da: float
    db: float

    @classmethod
    def tuned(
        cls, a: float, b: float, co: LocalCoefficients, horizon: float
    ) -> FiniteDifferenceSteps:
        return cls(
            dt=1e-5 * horizon,
            da=1e-4 * max(abs(a), abs(float(co.abar))),
            db=1e-4 * max(abs(b), abs(float(co.bbar))),
        )


def _time_derivative(func: Callable[[float], float], t: float, dt: float, horizon: float) -> float:
    if t - dt >= 0.0 and t + dt <= horizon:
        return (func(t + dt) - func(t - dt)) / (2.0 * dt)
    if t - 2.0 * dt >= 0.0:
        return (3.0 * func(t) - 4.0 * func(t - dt) + func(t - 2.0 * dt)) / (2.0 * dt)
    return (-3.0 * func(t) + 4.0 * func(t + dt) - func(t + 2.0 * dt)) / (2.0 * dt)


def _source_term(
    t: float, a: float, b: float, co: LocalCoefficients, penalties: PenaltyParams
) -> float:
    """First-order source built from the Taylor pieces of 1/f, g/f and g**2/(4f)."""
    f0, g0 = float(co.f0), float(co.g0)
    df0, dg0 = float(co.df0), float(co.dg0)
    da = a - float(co.abar)
    db = b - float(co.bbar)
    inv_f = -df0 / f0**2 * da
    g_over_f = -df0 * g0 / f0**2 * da + dg0 / f0 * db
    quarter = -df0 * g0 * g0 / (4.0 * f0**2) * da + g0 * dg0 / (2.0 * f0) * db
    zeroth = float(h0(t, co, penalties))
    return inv_f * zeroth * zeroth + g_over_f * zeroth + quarter


def _pde_residual(
    t: float,
    a: float,
    b: float,
    co: LocalCoefficients,
    penalties: PenaltyParams,
    steps: FiniteDifferenceSteps,
) -> tuple[float, float]:
    def value(tt: float, aa: float, bb: float) -> float:
        return float(h1(tt, aa, bb, co, penalties))

    dt, da, db = steps.dt, steps.da, steps.db
    centre = value(t, a, b)
    h_t = _time_derivative(lambda tt: value(tt, a, b), t, dt, penalties.T)
    h_a = (value(t, a + da, b) - value(t, a - da, b)) / (2.0 * da)
    h_b = (value(t, a, b + db) - value(t, a, b - db)) / (2.0 * db)
    h_aa = (value(t, a + da, b) - 2.0 * centre + value(t, a - da, b)) / (da * da)
    h_bb = (value(t, a, b + db) - 2.0 * centre + value(t, a, b - db)) / (db * db)
    h_ab = (
        value(t, a + da, b + db)
        - value(t, a + da, b - db)
        - value(t, a - da, b + db)
        + value(t, a - da, b - db)
    ) / (4.0 * da * db)
    terms = (
        h_t,
        float(co.mu0) * h_a,
        float(co.eta0) * h_b,
        float(co.om0sq_half) * h_aa,
        float(co.rho_om_psi0) * h_ab,
        float(co.psi0sq_half) * h_bb,
        2.0 * float(co.gamma) * float(theta0(t, co, penalties.T)) * centre,
        _source_term(t, a, b, co, penalties),
    )
    residual = sum(terms)
    return residual, abs(residual) / max(max(abs(x) for x in terms), _FLOOR)


def _require_pde_regime(penalties: PenaltyParams) -> None:
    if penalties.regime is Regime.KAPPA_INFINITY_PHI_ZERO:
        raise NotApplicable("the first-order residual needs phi > 0")


def h1_pde_residual(
    points: Sequence[tuple[float, float, float]],
    co: LocalCoefficients,
    penalties: PenaltyParams,
    steps: FiniteDifferenceSteps | None = None,
) -> ResidualReport:
    """Finite-difference residual of the first-order equation at (t, a, b) points.

    ``co`` stays frozen at its expansion point while (a, b) move.
    """
    _require_pde_regime(penalties)
    abs_errors, rel_errors = [], []
    for t, a, b in points:
        point_steps = steps or FiniteDifferenceSteps.tuned(a, b, co, penalties.T)
        residual, relative = _pde_residual(t, a, b, co, penalties, point_steps)
        abs_errors.append(residual)
        rel_errors.append(relative)
    grid = "; ".join(f"(t={t:.4g}, a={a:.4g}, b={b:.4g})" for t, a, b in points)
    return _report("h1_pde_residual", grid, abs_errors, rel_errors, PDE_RTOL)


def h1_residual_convergence(
    t: float,
    a: float,
    b: float,
    co: LocalCoefficients,
    penalties: PenaltyParams,
    dt: float | None = None,
) -> ResidualReport:
    """Observed order of the residual when the time step is halved.

    Raises:
        StepTooSmall: If the residual does not decrease under refinement.
    """
    _require_pde_regime(penalties)
    horizon = penalties.T
    coarse_dt = dt or min(1e-2 * horizon, 0.1 / float(co.gamma))
    tuned = FiniteDifferenceSteps.tuned(a, b, co, horizon)
    coarse, _ = _pde_residual(t, a, b, co, penalties, replace(tuned, dt=coarse_dt))
    fine, _ = _pde_residual(t, a, b, co, penalties, replace(tuned, dt=coarse_dt / 2.0))
    if not abs(fine) < abs(coarse):
        raise StepTooSmall(
            f"residual did not decrease under step halving ({abs(coarse):.3g} -> {abs(fine):.3g})"
        )
    order = math.log2(abs(coarse) / abs(fine))
    return _report(
        "h1_residual_convergence",
        f"t={t:.4g}, dt={coarse_dt:.3g} and {coarse_dt / 2:.3g}",
        [abs(coarse) - abs(fine)],
        [order - 2.0],
        ORDER_TOLERANCE,
        detail=f"observed order {order:.3f}",
    )


def gamma0_moment_check(
    t: float,
    s: float,
    a: float,
    b: float,
    co: LocalCoefficients,
    penalties: PenaltyParams,
    n_nodes: int = _KERNEL_NODES,
) -> ResidualReport:
    """Zeroth and first moments of the Gaussian kernel against psi0 and the drifted means.

    Raises:
        SingularCovariance: If the kernel covariance is not positive definite.
    """
    if not t < s <= penalties.T:
        raise ValidationError("moment check needs t < s <= T", field="s")
    horizon = penalties.T
    elapsed = s - t
    c_aa = 2.0 * float(co.om0sq_half) * elapsed
    c_bb = 2.0 * float(co.psi0sq_half) * elapsed
    c_ab = float(co.rho_om_psi0) * elapsed
    det = c_aa * c_bb - c_ab * c_ab
    if not det > 1e-12 * c_aa * c_bb:
        raise SingularCovariance(f"kernel covariance determinant {det:.3g} is not positive")
    mean_a = a + float(co.mu0) * elapsed
    mean_b = b + float(co.eta0) * elapsed

    gamma = float(co.gamma)
    growth = _growth(co, horizon)
    _check_window(co, t, horizon)
    prefactor = math.exp(2.0 * gamma * elapsed) * ((1.0 - growth(s)) / (1.0 - growth(t))) ** 2

    norm = prefactor / (2.0 * math.pi * math.sqrt(det))

    def density(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
        x = alpha - mean_a
        y = beta - mean_b
        quad = (c_bb * x * x - 2.0 * c_ab * x * y + c_aa * y * y) / det
        return norm * np.exp(-0.5 * quad)

    span_a = _KERNEL_SPAN * math.sqrt(c_aa)
    span_b = _KERNEL_SPAN * math.sqrt(c_bb)
    box = ((mean_a - span_a, mean_a + span_a), (mean_b - span_b, mean_b + span_b))
    zeroth = gauss_legendre_2d(density, *box, n_nodes=n_nodes)
    first_a = gauss_legendre_2d(lambda x, y: density(x, y) * x, *box, n_nodes=n_nodes)
    first_b = gauss_legendre_2d(lambda x, y: density(x, y) * y, *box, n_nodes=n_nodes)

    discount = float(psi0(t, s, co, horizon))
    expected = (discount, discount * mean_a, discount * mean_b)
    measured = (zeroth, first_a, first_b)
    return _report(
        "gamma0_moments",
        f"(t, s) = ({t:.4g}, {s:.4g}), {n_nodes}x{n_nodes} Gauss-Legendre",
        [m - e for m, e in zip(measured, expected)],
        [_relative(m, e) for m, e in zip(measured, expected)],
        MOMENT_RTOL,
    )


ValueFunction = Callable[[float, LocalCoefficients, PenaltyParams], Any]


def _value_functions(a: float, b: float) -> tuple[tuple[str, ValueFunction], ...]:
    return (
        ("h0", lambda t, c, p: h0(t, c, p)),
        ("h1", lambda t, c, p: h1(t, a, b, c, p)),
    )


def limit_consistency(
    co: LocalCoefficients,
    penalties: PenaltyParams,
    t_grid: Sequence[float],
    a: float | None = None,
    b: float | None = None,
) -> list[ResidualReport]:
    """Check the limiting closed forms against the general ones at extreme penalties."""
    a = 1.5 * float(co.abar) if a is None else a
    b = 1.5 * float(co.bbar) if b is None else b
    horizon = penalties.T
    times = [t for t in t_grid if t <= 0.99 * horizon]
    grid = f"{len(times)} points in [{min(times):.4g}, {max(times):.4g}]"
    reports: list[ResidualReport] = []

    if penalties.phi > 0:
        large_kappa = replace(penalties, kappa=LARGE_KAPPA, regime=Regime.NONLIMITING)
        kappa_inf = replace(penalties, regime=Regime.KAPPA_INFINITY)
        co_large = refit_penalties(co, large_kappa)
        co_inf = refit_penalties(co, kappa_inf)
        for label, func in _value_functions(a, b):
            errors = [
                (float(func(t, co_large, large_kappa)), float(func(t, co_inf, kappa_inf)))
                for t in times
            ]
            reports.append(
                _report(
                    f"{label}_kappa_limit",
                    f"kappa={LARGE_KAPPA:g}, {grid}",
                    [x - y for x, y in errors],
                    [_relative(x, y) for x, y in errors],
                    KAPPA_LIMIT_RTOL,
                )
            )
    else:
        reports.append(ResidualReport.not_applicable("kappa_limit", "phi = 0"))

    small_phi = replace(penalties, phi=SMALL_PHI, regime=Regime.KAPPA_INFINITY)
    phi_zero = replace(penalties, phi=0.0, regime=Regime.KAPPA_INFINITY_PHI_ZERO)
    co_small = refit_penalties(co, small_phi)
    co_zero = refit_penalties(co, phi_zero)
    for label, func in _value_functions(a, b):
        pairs = [
            (float(func(t, co_small, small_phi)), float(func(t, co_zero, phi_zero))) for t in times
        ]
        reports.append(
            _report(
                f"{label}_phi_limit",
                f"phi={SMALL_PHI:g}, {grid}",
                [x - y for x, y in pairs],
                [abs(x - y) / max(abs(y), _FLOOR) for x, y in pairs],
                PHI_LIMIT_RTOL,
            )
        )

    abs_errors, rel_errors = [], []
    for t in times:
        products = h1_products(t, a, b, co_small, small_phi)
        limits = h1_limit_products(t, a, b, co_zero, horizon)
        scale = max(max(abs(float(x)) for x in limits), _FLOOR)
        for product, limit in zip(products, limits):
            abs_errors.append(float(product) - float(limit))
            rel_errors.append(abs(float(product) - float(limit)) / scale)
    reports.append(
        _report(
            "h1_limit_products",
            f"phi={SMALL_PHI:g}, {grid}",
            abs_errors,
            rel_errors,
            PHI_LIMIT_RTOL,
        )
    )
    return reports


def _guarded(
    name: str, check: Callable[[], ResidualReport | list[ResidualReport]]
) -> list[ResidualReport]:
    try:
        result = check()
    except (NotApplicable, SingularCovariance) as exc:
        logger.info("%s skipped: %s", name, exc.message)
        return [ResidualReport.not_applicable(name, exc.message)]
    except ModelError as exc:
        logger.warning("%s failed: %s", name, exc)
        return [
            ResidualReport(name, "", math.inf, math.inf, 0.0, False, True, str(exc))
        ]
    return result if isinstance(result, list) else [result]


def run_suite(
    model: MarketModel, penalties: PenaltyParams, init: InitialState
) -> list[ResidualReport]:
    """Every oracle at the parameters of one experiment, expanded around (a0, b0).

    Checks that need phi > 0 run on the nonlimiting and kappa-infinity variants of the
    penalties. With phi = 0 only the Riccati residual of the limiting h0 and the
    small-phi limits run; the rest are reported as not applicable.
    """
    horizon = penalties.T
    abar, bbar = init.a0, init.b0
    points = [
        (0.5 * horizon, 1.2 * abar, 0.8 * bbar),
        (0.2 * horizon, 1.5 * abar, 1.5 * bbar),
        (0.8 * horizon, 0.8 * abar, 1.2 * bbar),
    ]
    reports: list[ResidualReport] = []
    logger.info("Running verification suite (regime %s)", penalties.regime.value)

    if penalties.phi > 0:
        nonlimiting = replace(penalties, regime=Regime.NONLIMITING)
        kappa_inf = replace(penalties, regime=Regime.KAPPA_INFINITY)
        co = _local_coefficients(model, nonlimiting, abar, bbar)
        co_inf = refit_penalties(co, kappa_inf)
        t_values = [0.0, 0.3 * horizon, 0.6 * horizon, 0.9 * horizon]
        start = oracle_window_start(co, horizon)
        width = horizon - start
        pairs = [
            (start + 0.2 * width, start + 0.7 * width),
            (start, start + 0.5 * width),
            (start + 0.5 * width, start + 0.9 * width),
        ]
        reports += _guarded("riccati_residual", lambda: riccati_residual(co, nonlimiting))
        reports += _guarded(
            "riccati_residual[kappa-infinity]", lambda: riccati_residual(co_inf, kappa_inf)
        )
        reports += _guarded("h0_terminal", lambda: terminal_check(co, nonlimiting))
        reports += _guarded(
            "integrals_I[nonlimiting]", lambda: integrals_agreement(co, nonlimiting, t_values)
        )
        reports += _guarded(
            "integrals_I[kappa-infinity]", lambda: integrals_agreement(co_inf, kappa_inf, t_values)
        )
        reports += _guarded("psi0_identity", lambda: psi0_identity(co, nonlimiting, pairs))
        reports += _guarded("h1_pde_residual", lambda: h1_pde_residual(points, co, nonlimiting))
        t_c = max(0.0, horizon - 1.0 / float(co.gamma))
        reports += _guarded(
            "h1_residual_convergence",
            lambda: h1_residual_convergence(t_c, *points[0][1:], co, nonlimiting),
        )
        for t, s in (pairs[0], pairs[2]):
            reports += _guarded(
                "gamma0_moments",
                lambda t=t, s=s: gamma0_moment_check(t, s, abar, bbar, co, nonlimiting),
            )
        t_grid = list(np.linspace(0.0, 0.99 * horizon, 12))
        reports += _guarded("limit_consistency", lambda: limit_consistency(co, penalties, t_grid))
    else:
        co = _local_coefficients(model, penalties, abar, bbar)
        reports += _guarded("riccati_residual", lambda: riccati_residual(co, penalties))
        for name in ("integrals_I", "psi0_identity", "h1_pde_residual", "gamma0_moments"):
            reports.append(ResidualReport.not_applicable(name, "phi = 0"))
        t_grid = list(np.linspace(0.0, 0.99 * horizon, 12))
        reports += _guarded("limit_consistency", lambda: limit_consistency(co, penalties, t_grid))

    failed = sum(not r.passed for r in reports)
    logger.info("Verification finished: %d check(s), %d failed", len(reports), failed)
    return reports
