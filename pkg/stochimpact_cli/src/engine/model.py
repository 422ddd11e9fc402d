"""Market model, impact-function abstraction and local Taylor coefficients.

Every strategy formula is evaluated from a :class:`LocalCoefficients` snapshot taken at an
expansion point ``(abar, bbar)``. Inputs may be floats or numpy arrays (one entry per
simulated path); outputs follow numpy broadcasting.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace
from enum import StrEnum

import numpy as np
import numpy.typing as npt
from numpy.polynomial import polynomial as poly

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.core.exceptions import (
    DegenerateZeta,
    NonPositiveTemporaryImpact,
    NotApplicable,
    SingularDenominator,
)


FloatArray = npt.NDArray[np.float64]
Real = float | FloatArray
RealFunction = Callable[[Real], Real]

logger = logging.getLogger("stochimpact.engine.model")

_FD_RTOL = 1e-6
_FD_ATOL = 1e-12
_FD_REL_STEP = 1e-6
_SINGULAR_GRID_POINTS = 1024
_BISECTION_STEPS = 80
_DEGENERATE_RTOL = 1e-12


def _zero(x: Real) -> Real:
    return np.zeros_like(np.asarray(x, dtype=float))[()]


class ImpactKind(StrEnum):
    LINEAR = "linear"
    POLYNOMIAL = "polynomial"
    USER = "user"


@dataclass(frozen=True, slots=True)
class ImpactFunction:
    """Price impact level as a function of the impact state, with its analytic derivative.

    Builtin kinds store ascending polynomial coefficients; user-defined kinds wrap two
    callables that must accept floats and numpy arrays.
    """

    kind: ImpactKind
    coefficients: tuple[float, ...] = ()
    user_value: RealFunction | None = None
    user_derivative: RealFunction | None = None
    _derivative_coefficients: tuple[float, ...] = field(
        init=False, repr=False, compare=False, default=()
    )

    def __post_init__(self) -> None:
        if self.kind is ImpactKind.USER:
            if self.user_value is None or self.user_derivative is None:
                raise ValidationError(
                    "user-defined impact needs both value and derivative", field="impact"
                )
            return
        if not self.coefficients:
            raise ValidationError("impact polynomial needs coefficients", field="impact")
        derivative = poly.polyder(np.asarray(self.coefficients, dtype=float))
        object.__setattr__(self, "_derivative_coefficients", tuple(float(c) for c in derivative))

    @classmethod
    def linear(cls, slope: float = 1.0, intercept: float = 0.0) -> ImpactFunction:
        return cls(ImpactKind.LINEAR, (float(intercept), float(slope)))

    @classmethod
    def polynomial(cls, coefficients: Sequence[float]) -> ImpactFunction:
        """Polynomial impact with coefficients in ascending powers."""
        return cls(ImpactKind.POLYNOMIAL, tuple(float(c) for c in coefficients))

    @classmethod
    def user_defined(
        cls,
        value: RealFunction,
        derivative: RealFunction,
        sample_points: Sequence[float] = (),
    ) -> ImpactFunction:
        """Wrap user callables and check the derivative against finite differences.

        Raises:
            ValidationError: If the derivative disagrees with a centered difference of the
                value at any sample point.
        """
        impact = cls(ImpactKind.USER, user_value=value, user_derivative=derivative)
        impact.check_derivative(sample_points)
        return impact

    def value(self, x: Real) -> Real:
        if self.kind is ImpactKind.USER:
            return self.user_value(x)  # type: ignore[misc]
        return poly.polyval(x, self.coefficients)

    def derivative(self, x: Real) -> Real:
        if self.kind is ImpactKind.USER:
            return self.user_derivative(x)  # type: ignore[misc]
        return poly.polyval(x, self._derivative_coefficients)

    def check_derivative(self, sample_points: Sequence[float]) -> None:
        """Compare the analytic derivative with a centered difference at each point.

        The step is relative to the point so that small impact levels are resolved.
        """
        for x in sample_points:
            step = _FD_REL_STEP * (abs(x) if x != 0 else 1.0)
            centered = (float(self.value(x + step)) - float(self.value(x - step))) / (2.0 * step)
            analytic = float(self.derivative(x))
            if not math.isclose(centered, analytic, rel_tol=_FD_RTOL, abs_tol=_FD_ATOL):
                raise ValidationError(
                    f"impact derivative inconsistent at x={x!r}: "
                    f"analytic {analytic!r}, finite difference {centered!r}",
                    field="impact.derivative",
                )


class DiffusionKind(StrEnum):
    CIR = "cir"
    USER = "user"


@dataclass(frozen=True, slots=True)
class DiffusionSpec:
    """Drift and diffusion coefficients of one impact state process."""

    kind: DiffusionKind
    mean_reversion: float = 0.0
    long_run_mean: float = 0.0
    vol_of_vol: float = 0.0
    user_drift: RealFunction | None = None
    user_diffusion: RealFunction | None = None

    def __post_init__(self) -> None:
        if self.kind is DiffusionKind.CIR:
            for name in ("mean_reversion", "long_run_mean", "vol_of_vol"):
                if not getattr(self, name) > 0:
                    raise ValidationError(f"CIR {name} must be > 0", field=name)
        elif self.user_drift is None or self.user_diffusion is None:
            raise ValidationError(
                "user-defined dynamics need both drift and diffusion", field="dynamics"
            )

    @classmethod
    def cir(cls, mean_reversion: float, long_run_mean: float, vol_of_vol: float) -> DiffusionSpec:
        return cls(
            DiffusionKind.CIR,
            mean_reversion=float(mean_reversion),
            long_run_mean=float(long_run_mean),
            vol_of_vol=float(vol_of_vol),
        )

    @classmethod
    def user_defined(cls, drift: RealFunction, diffusion: RealFunction) -> DiffusionSpec:
        return cls(DiffusionKind.USER, user_drift=drift, user_diffusion=diffusion)

    @classmethod
    def constant(cls) -> DiffusionSpec:
        """A frozen impact state: zero drift and zero diffusion."""
        return cls(DiffusionKind.USER, user_drift=_zero, user_diffusion=_zero)

    @property
    def is_cir(self) -> bool:
        return self.kind is DiffusionKind.CIR

    def drift(self, x: Real) -> Real:
        if self.is_cir:
            return self.mean_reversion * (self.long_run_mean - np.asarray(x))[()]
        return self.user_drift(x)  # type: ignore[misc]

    def diffusion(self, x: Real) -> Real:
        if self.is_cir:
            return self.vol_of_vol * np.sqrt(np.maximum(x, 0.0))
        return self.user_diffusion(x)  # type: ignore[misc]


def feller_check(spec: DiffusionSpec) -> bool:
    """Return True iff the CIR parameters satisfy 2*lambda*theta > sigma_v**2.

    Raises:
        NotApplicable: For user-defined dynamics.
    """
    if not spec.is_cir:
        raise NotApplicable("Feller condition applies to CIR dynamics only")
    return 2.0 * spec.mean_reversion * spec.long_run_mean > spec.vol_of_vol**2


@dataclass(frozen=True, slots=True)
class MarketModel:
    f: ImpactFunction
    g: ImpactFunction
    a_dyn: DiffusionSpec
    b_dyn: DiffusionSpec
    rho: float
    sigma: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.rho <= 1.0:
            raise ValidationError("rho must lie in [-1, 1]", field="model.rho")
        # sigma = 0 is accepted for deterministic execution checks
        if not self.sigma >= 0.0:
            raise ValidationError("sigma must be >= 0", field="model.sigma")


class Regime(StrEnum):
    NONLIMITING = "nonlimiting"
    KAPPA_INFINITY = "kappa-infinity"
    KAPPA_INFINITY_PHI_ZERO = "kappa-infinity-phi-zero"

    @property
    def is_limiting(self) -> bool:
        return self is not Regime.NONLIMITING


@dataclass(frozen=True, slots=True)
class PenaltyParams:
    kappa: float
    phi: float
    T: float
    regime: Regime = Regime.NONLIMITING

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ValidationError("horizon T must be > 0", field="penalties.T")
        if not self.kappa > 0:
            raise ValidationError("kappa must be > 0", field="penalties.kappa")
        if not self.phi >= 0:
            raise ValidationError("phi must be >= 0", field="penalties.phi")
        if self.regime is not Regime.KAPPA_INFINITY_PHI_ZERO and self.phi == 0:
            raise ValidationError(
                f"phi must be > 0 in regime {self.regime.value}", field="penalties.phi"
            )


@dataclass(frozen=True, slots=True)
class LocalCoefficients:
    """Zeroth and first order Taylor data at the expansion point, plus gamma and zeta.

    In both limiting regimes ``zeta`` holds its kappa -> infinity value 1 and
    ``zeta_minus_one`` is 0; strategies dispatch on the regime instead.
    """

    f0: Real
    g0: Real
    df0: Real
    dg0: Real
    mu0: Real
    eta0: Real
    om0sq_half: Real
    psi0sq_half: Real
    rho_om_psi0: Real
    gamma: Real
    zeta: Real
    zeta_minus_one: Real
    abar: Real
    bbar: Real


def _require_positive_impact(f0: Real) -> None:
    bad = np.atleast_1d(np.asarray(f0) <= 0)
    if bad.any():
        positions = tuple(int(i) for i in np.flatnonzero(bad)) if np.ndim(f0) else ()
        raise NonPositiveTemporaryImpact(
            f"temporary impact f(a) must be > 0 ({int(bad.sum())} point(s) violate it)",
            positions=positions,
        )


def _locate_blowup(
    zeta_minus_one: float, gamma: float, horizon: float, grid: FloatArray
) -> float | None:
    """First t in [0, T] with zeta = exp(-2*gamma*(T - t)), or None."""

    def denominator(t: float | FloatArray) -> float | FloatArray:
        return zeta_minus_one - np.expm1(-2.0 * gamma * (horizon - t))

    values = denominator(grid)
    exact = np.flatnonzero(values == 0.0)
    if exact.size:
        return float(grid[exact[0]])
    changes = np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:]))
    if not changes.size:
        return None
    lo, hi = float(grid[changes[0]]), float(grid[changes[0] + 1])
    f_lo = float(values[changes[0]])
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        f_mid = float(denominator(mid))
        if f_mid == 0.0:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _check_singular(zeta: Real, zeta_minus_one: Real, gamma: Real, horizon: float) -> None:
    zeta_a, delta_a, gamma_a = np.broadcast_arrays(
        np.atleast_1d(zeta), np.atleast_1d(zeta_minus_one), np.atleast_1d(gamma)
    )
    # blow-up inside the horizon needs zeta in (0, 1]
    suspects = np.flatnonzero((zeta_a > 0) & (zeta_a <= 1))
    if not suspects.size:
        return
    grid = np.linspace(0.0, horizon, _SINGULAR_GRID_POINTS)
    for pos in suspects:
        blowup = _locate_blowup(float(delta_a.flat[pos]), float(gamma_a.flat[pos]), horizon, grid)
        if blowup is not None:
            raise SingularDenominator(
                f"theta0 is singular at t={blowup:.6g} inside [0, {horizon:g}] "
                f"(zeta={float(zeta_a.flat[pos]):.6g})",
                blowup_time=blowup,
            )


def refit_penalties(co: LocalCoefficients, penalties: PenaltyParams) -> LocalCoefficients:
    """Recompute gamma and zeta for ``penalties`` on existing Taylor data.

    Raises:
        DegenerateZeta: If kappa - g0/2 - sqrt(phi*f0) vanishes (nonlimiting regime).
        SingularDenominator: If theta0 would blow up inside [0, T].
    """
    root = np.sqrt(penalties.phi * np.asarray(co.f0))[()]
    gamma = np.sqrt(penalties.phi / np.asarray(co.f0))[()]
    if penalties.regime.is_limiting:
        return replace(co, gamma=gamma, zeta=1.0, zeta_minus_one=0.0)

    shifted = penalties.kappa - 0.5 * np.asarray(co.g0)
    denominator = shifted - root
    if np.any(np.abs(denominator) <= _DEGENERATE_RTOL * np.maximum(np.abs(shifted), root)):
        raise DegenerateZeta(
            "kappa - g0/2 - sqrt(phi*f0) vanishes; zeta is undefined for these penalties"
        )
    zeta = ((shifted + root) / denominator)[()]
    zeta_minus_one = (2.0 * root / denominator)[()]
    _check_singular(zeta, zeta_minus_one, gamma, penalties.T)
    return replace(co, gamma=gamma, zeta=zeta, zeta_minus_one=zeta_minus_one)


def local_coefficients(
    model: MarketModel,
    penalties: PenaltyParams,
    abar: Real,
    bbar: Real,
) -> LocalCoefficients:
    """Taylor data of every PDE coefficient at ``(abar, bbar)`` plus (gamma, zeta).

    Raises:
        NonPositiveTemporaryImpact: If f(abar) <= 0.
        DegenerateZeta: If the zeta denominator vanishes.
        SingularDenominator: If theta0 blows up inside the horizon.
    """
    f0 = model.f.value(abar)
    _require_positive_impact(f0)
    omega = model.a_dyn.diffusion(abar)
    psi = model.b_dyn.diffusion(bbar)
    taylor = LocalCoefficients(
        f0=f0,
        g0=model.g.value(bbar),
        df0=model.f.derivative(abar),
        dg0=model.g.derivative(bbar),
        mu0=model.a_dyn.drift(abar),
        eta0=model.b_dyn.drift(bbar),
        om0sq_half=0.5 * omega * omega,
        psi0sq_half=0.5 * psi * psi,
        rho_om_psi0=model.rho * omega * psi,
        gamma=0.0,
        zeta=1.0,
        zeta_minus_one=0.0,
        abar=abar,
        bbar=bbar,
    )
    return refit_penalties(taylor, penalties)
