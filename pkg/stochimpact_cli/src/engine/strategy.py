"""Closed-form value expansion and liquidation-rate strategies.

All formulas are written in terms of ``x = exp(-2*gamma*(T - t))`` and ``E = 1 - x`` so that
nothing grows like ``exp(2*gamma*T)``. With ``delta = zeta - 1`` the recurring denominator
``zeta - x`` equals ``delta + E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.core.exceptions import HorizonBoundary, NotApplicable, OrderViolation

from .model import LocalCoefficients, MarketModel, PenaltyParams, Real, Regime, local_coefficients


class StrategyFamily(StrEnum):
    ALMGREN_CHRISS = "almgren_chriss"
    ORDER0 = "order0"
    ORDER1 = "order1"
    HOLD = "hold"


@dataclass(frozen=True, slots=True)
class StrategyKind:
    """A liquidation strategy; the regime comes from the penalties it is evaluated with.

    Attributes:
        family: Strategy family.
        frozen_a: Temporary impact level used by Almgren-Chriss for every evaluation.
        frozen_b: Permanent impact level used by Almgren-Chriss for every evaluation.
        no_buy: Truncate the rate at zero.
    """

    family: StrategyFamily
    frozen_a: float | None = None
    frozen_b: float | None = None
    no_buy: bool = False

    def __post_init__(self) -> None:
        frozen = (self.frozen_a, self.frozen_b)
        if self.family is StrategyFamily.ALMGREN_CHRISS:
            if None in frozen:
                raise ValidationError(
                    "almgren_chriss needs a frozen impact pair", field="strategies.frozen_a"
                )
        elif frozen != (None, None):
            raise ValidationError(
                f"{self.family.value} does not take a frozen impact pair",
                field="strategies.frozen_a",
            )

    @classmethod
    def almgren_chriss(cls, frozen_a: float, frozen_b: float, no_buy: bool = False) -> StrategyKind:
        return cls(StrategyFamily.ALMGREN_CHRISS, float(frozen_a), float(frozen_b), no_buy)

    @classmethod
    def order0(cls, no_buy: bool = False) -> StrategyKind:
        return cls(StrategyFamily.ORDER0, no_buy=no_buy)

    @classmethod
    def order1(cls, no_buy: bool = False) -> StrategyKind:
        return cls(StrategyFamily.ORDER1, no_buy=no_buy)

    @classmethod
    def hold(cls) -> StrategyKind:
        return cls(StrategyFamily.HOLD)

    @property
    def label(self) -> str:
        suffix = "+no_buy" if self.no_buy else ""
        return f"{self.family.value}{suffix}"


@dataclass(frozen=True, slots=True)
class ValueExpansion:
    h0: Real
    h1: Real
    hbar: Real
    order: int


def _as_result(value: Real) -> Real:
    return np.asarray(value, dtype=float)[()]


def _decay(t: Real, co: LocalCoefficients, horizon: float) -> tuple[Real, Real, Real]:
    tau = horizon - np.asarray(t, dtype=float)
    exponent = -2.0 * np.asarray(co.gamma) * tau
    return tau, np.exp(exponent), -np.expm1(exponent)


def _open_horizon(t: Real, horizon: float) -> Real:
    tau = horizon - np.asarray(t, dtype=float)
    if np.any(tau <= 0):
        raise HorizonBoundary(
            f"limiting-regime formula evaluated at t >= T (T={horizon:g}); "
            "rates are defined for t < T only"
        )
    return tau


def theta0(t: Real, co: LocalCoefficients, T: float) -> Real:
    """Shape function of h0; equals -coth(gamma*(T - t)) when zeta = 1."""
    _, _, e = _decay(t, co, T)
    denominator = co.zeta_minus_one + e
    if np.any(denominator == 0):
        raise HorizonBoundary("theta0 is unbounded at t = T when zeta = 1")
    return _as_result(-(2.0 + co.zeta_minus_one - e) / denominator)


def h0(t: Real, co: LocalCoefficients, penalties: PenaltyParams) -> Real:
    """Zeroth-order value coefficient for the regime of ``penalties``.

    Raises:
        HorizonBoundary: If a limiting regime is evaluated at t = T.
    """
    half_g0 = 0.5 * np.asarray(co.g0)
    match penalties.regime:
        case Regime.NONLIMITING:
            value = -half_g0 + np.sqrt(penalties.phi * np.asarray(co.f0)) * theta0(
                t, co, penalties.T
            )
            return _as_result(np.where(np.asarray(t) >= penalties.T, -penalties.kappa, value))
        case Regime.KAPPA_INFINITY:
            tau = _open_horizon(t, penalties.T)
            return _as_result(-half_g0 - co.f0 * co.gamma / np.tanh(co.gamma * tau))
        case Regime.KAPPA_INFINITY_PHI_ZERO:
            tau = _open_horizon(t, penalties.T)
            return _as_result(-half_g0 - co.f0 / tau)


def urgency(t: Real, co: LocalCoefficients, penalties: PenaltyParams) -> Real:
    """Zeroth-order feedback coefficient -(g0/2 + h0)/f0, so that nu0 = urgency * q."""
    match penalties.regime:
        case Regime.NONLIMITING:
            return _as_result(-np.asarray(co.gamma) * theta0(t, co, penalties.T))
        case Regime.KAPPA_INFINITY:
            tau = _open_horizon(t, penalties.T)
            return _as_result(co.gamma / np.tanh(co.gamma * tau))
        case Regime.KAPPA_INFINITY_PHI_ZERO:
            tau = _open_horizon(t, penalties.T)
            return _as_result(1.0 / tau * np.ones_like(np.asarray(co.f0, dtype=float)))


def psi0(t: Real, s: Real, co: LocalCoefficients, T: float) -> Real:
    """Discount factor exp(2*gamma*int_t^s theta0).

    Raises:
        OrderViolation: If s < t.
    """
    t_arr = np.asarray(t, dtype=float)
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < t_arr):
        raise OrderViolation(f"psi0 needs t <= s, got t={t!r}, s={s!r}")
    gamma = np.asarray(co.gamma)
    e_t = -np.expm1(-2.0 * gamma * (T - t_arr))
    e_s = -np.expm1(-2.0 * gamma * (T - s_arr))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (co.zeta_minus_one + e_s) / (co.zeta_minus_one + e_t)
        value = np.exp(-2.0 * gamma * (s_arr - t_arr)) * ratio * ratio
    return _as_result(np.where(s_arr == t_arr, 1.0, value))


def _integrals_nonlimiting(
    t: Real, co: LocalCoefficients, horizon: float
) -> tuple[Real, Real, Real, Real]:
    gamma = np.asarray(co.gamma)
    delta = np.asarray(co.zeta_minus_one)
    zeta = np.asarray(co.zeta)
    tau, x, e = _decay(t, co, horizon)
    zeta_sq = zeta * zeta
    zeta_sq_minus_x = delta * (2.0 + delta) + e
    one_minus_zeta_sq = -delta * (2.0 + delta)
    scale = 2.0 * gamma * (delta + e) ** 2

    i2 = (e * (zeta_sq + x) + 4.0 * gamma * tau * zeta * x) / scale
    i4 = -e * zeta_sq_minus_x / scale
    j2 = (
        tau * x * one_minus_zeta_sq
        + e * zeta_sq_minus_x / (2.0 * gamma)
        + 2.0 * gamma * zeta * x * tau * tau
    ) / scale
    j4 = (tau * x * (1.0 + zeta_sq) - e * (zeta_sq + x) / (2.0 * gamma)) / scale
    t_arr = np.asarray(t, dtype=float)
    return t_arr * i2 + j2, i2, t_arr * i4 + j4, i4


def _integrals_kappa_infinity(
    t: Real, co: LocalCoefficients, horizon: float
) -> tuple[Real, Real, Real, Real]:
    gamma = np.asarray(co.gamma)
    tau, x, e = _decay(t, co, horizon)
    inside = tau > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = 2.0 * gamma * e * e
        i2 = (e * (1.0 + x) + 4.0 * gamma * tau * x) / scale
        i4 = -0.5 / gamma * np.ones_like(x)
        j2 = 0.25 / (gamma * gamma) + x * tau * tau / (e * e)
        j4 = (2.0 * tau * x - e * (1.0 + x) / (2.0 * gamma)) / scale
    t_arr = np.asarray(t, dtype=float)
    # empty integration interval at t = T
    i2, i4, j2, j4 = (np.where(inside, v, 0.0) for v in (i2, i4, j2, j4))
    return t_arr * i2 + j2, i2, t_arr * i4 + j4, i4


def integrals_I(
    t: Real, co: LocalCoefficients, penalties: PenaltyParams
) -> tuple[Real, Real, Real, Real]:
    """The four weighted integrals of theta0 and theta0**2 against psi0 over [t, T].

    Raises:
        NotApplicable: In the kappa-infinity-phi-zero regime (gamma = 0).
    """
    match penalties.regime:
        case Regime.NONLIMITING:
            values = _integrals_nonlimiting(t, co, penalties.T)
        case Regime.KAPPA_INFINITY:
            values = _integrals_kappa_infinity(t, co, penalties.T)
        case _:
            raise NotApplicable(
                "integrals are not defined at phi = 0; use h1_limit_products instead"
            )
    return tuple(_as_result(v) for v in values)  # type: ignore[return-value]


def h1_products(
    t: Real, a: Real, b: Real, co: LocalCoefficients, penalties: PenaltyParams
) -> tuple[Real, Real, Real, Real]:
    """The four terms c_i * I_i whose sum is h1."""
    if penalties.regime is Regime.KAPPA_INFINITY_PHI_ZERO:
        return h1_limit_products(t, a, b, co, penalties.T)
    i1, i2, i3, i4 = integrals_I(t, co, penalties)
    t_arr = np.asarray(t, dtype=float)
    gamma = np.asarray(co.gamma)
    c1 = -gamma * gamma * co.df0 * co.mu0
    c2 = -gamma * gamma * co.df0 * (a - co.abar - t_arr * co.mu0)
    c3 = gamma * co.dg0 * co.eta0
    c4 = gamma * co.dg0 * (b - co.bbar - t_arr * co.eta0)
    return (
        _as_result(c1 * i1),
        _as_result(c2 * i2),
        _as_result(c3 * i3),
        _as_result(c4 * i4),
    )


def h1_limit_products(
    t: Real, a: Real, b: Real, co: LocalCoefficients, T: float
) -> tuple[Real, Real, Real, Real]:
    """Limits of the four h1 terms as (kappa, phi) -> (infinity, 0)."""
    tau = _open_horizon(t, T)
    t_arr = np.asarray(t, dtype=float)
    return (
        _as_result(-co.df0 * co.mu0 * (T + t_arr) / (2.0 * tau)),
        _as_result(-co.df0 * (a - co.abar - t_arr * co.mu0) / tau),
        _as_result(-co.dg0 * co.eta0 * (T + 2.0 * t_arr) / 6.0),
        _as_result(-co.dg0 * (b - co.bbar - t_arr * co.eta0) / 2.0),
    )


def h1(t: Real, a: Real, b: Real, co: LocalCoefficients, penalties: PenaltyParams) -> Real:
    """First-order value correction around the expansion point of ``co``.

    Raises:
        HorizonBoundary: If a limiting regime is evaluated at t = T.
    """
    match penalties.regime:
        case Regime.KAPPA_INFINITY_PHI_ZERO:
            tau = _open_horizon(t, penalties.T)
            return _as_result(
                -co.df0 / (2.0 * tau) * (2.0 * (a - co.abar) + co.mu0 * tau)
                - co.dg0 / 6.0 * (3.0 * (b - co.bbar) + co.eta0 * tau)
            )
        case Regime.KAPPA_INFINITY:
            _open_horizon(t, penalties.T)
    return _as_result(sum(h1_products(t, a, b, co, penalties)))


def rate(
    kind: StrategyKind,
    t: Real,
    q: Real,
    a: Real,
    b: Real,
    model: MarketModel,
    penalties: PenaltyParams,
) -> Real:
    """Liquidation rate of ``kind`` at state (t, q, a, b).

    Order-N strategies re-expand around the current impact state on every call;
    Almgren-Chriss always uses its frozen pair.

    Raises:
        NonPositiveTemporaryImpact: If f <= 0 at the expansion point.
        HorizonBoundary: If a limiting regime is evaluated at t = T.
    """
    match kind.family:
        case StrategyFamily.HOLD:
            nu = np.zeros_like(np.asarray(q, dtype=float))
        case StrategyFamily.ALMGREN_CHRISS:
            co = local_coefficients(model, penalties, kind.frozen_a, kind.frozen_b)
            nu = urgency(t, co, penalties) * q
        case _:
            co = local_coefficients(model, penalties, a, b)
            coefficient = urgency(t, co, penalties)
            if kind.family is StrategyFamily.ORDER1:
                coefficient = coefficient - h1(t, a, b, co, penalties) / co.f0
            nu = coefficient * q
    if kind.no_buy:
        nu = np.maximum(nu, 0.0)
    return _as_result(nu)


def value_expansion(
    order: int,
    t: Real,
    a: Real,
    b: Real,
    model: MarketModel,
    penalties: PenaltyParams,
) -> ValueExpansion:
    if order not in (0, 1):
        raise ValidationError(f"expansion order must be 0 or 1, got {order!r}", field="order")
    co = local_coefficients(model, penalties, a, b)
    zeroth = h0(t, co, penalties)
    first = h1(t, a, b, co, penalties) if order == 1 else _as_result(0.0 * zeroth)
    return ValueExpansion(h0=zeroth, h1=first, hbar=_as_result(zeroth + first), order=order)


def full_value(
    t: Real,
    x: Real,
    s: Real,
    q: Real,
    a: Real,
    b: Real,
    order: int,
    model: MarketModel,
    penalties: PenaltyParams,
) -> Real:
    """Approximate value x + q*s + q**2 * hbar."""
    expansion = value_expansion(order, t, a, b, model, penalties)
    return _as_result(x + q * s + q * q * expansion.hbar)
