"""Seeded simulation of the impact diffusions, the midprice, inventory and cash.

Paths are simulated in batches on arrays shaped ``(paths, steps + 1)``. Every path draws its
noise from generators keyed to ``(master_seed, path_index)``, so a path never depends on the
batch it was simulated in.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.core.exceptions import InvalidInitialState, ModelError

from .model import DiffusionSpec, FloatArray, MarketModel, PenaltyParams
from .strategy import StrategyKind, rate


logger = logging.getLogger("stochimpact.engine.simulation")

EULER_FULL_TRUNCATION = "euler-full-truncation"
_SEED_LIMIT = 2**64


@dataclass(frozen=True, slots=True)
class SimConfig:
    n_steps: int = 1000
    master_seed: int = 0
    scheme: str = EULER_FULL_TRUNCATION
    force_final_liquidation: bool = True

    def __post_init__(self) -> None:
        if self.n_steps < 2:  # noqa: PLR2004
            raise ValidationError("n_steps must be >= 2", field="sim.n_steps")
        if not 0 <= self.master_seed < _SEED_LIMIT:
            raise ValidationError(
                "master_seed must be a 64-bit unsigned integer", field="sim.master_seed"
            )
        if self.scheme != EULER_FULL_TRUNCATION:
            raise ValidationError(f"unsupported scheme {self.scheme!r}", field="sim.scheme")

    def step(self, horizon: float) -> float:
        return horizon / self.n_steps

    def grid(self, horizon: float) -> FloatArray:
        return np.linspace(0.0, horizon, self.n_steps + 1)


@dataclass(frozen=True, slots=True)
class InitialState:
    x0: float
    s0: float
    q0: float
    a0: float
    b0: float


@dataclass(frozen=True, slots=True)
class PathNoise:
    """Standard normals per path and step: midprice, b driver, and a residual."""

    xi: FloatArray
    z_b: FloatArray
    z_perp: FloatArray


@dataclass(frozen=True, slots=True)
class ImpactPath:
    """Impact states on the time grid.

    ``a`` and ``b`` are ``(steps + 1,)`` for a single path and ``(paths, steps + 1)`` for a
    batch; ``z_a`` and ``z_b`` hold the correlated normals that drove them.
    """

    times: FloatArray
    a: FloatArray
    b: FloatArray
    z_a: FloatArray
    z_b: FloatArray
    clamps: int


@dataclass(frozen=True, slots=True)
class ExecutionTrajectory:
    times: FloatArray
    X: FloatArray
    S: FloatArray
    Q: FloatArray
    nu: FloatArray
    a: FloatArray
    b: FloatArray
    kind: str


def path_streams(
    master_seed: int, path_index: int
) -> tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    """Independent generators for the midprice, the b driver and the a residual."""
    children = np.random.SeedSequence(master_seed, spawn_key=(path_index,)).spawn(3)
    midprice, driver, residual = (np.random.default_rng(child) for child in children)
    return midprice, driver, residual


def draw_path_noise(cfg: SimConfig, path_indices: Sequence[int]) -> PathNoise:
    shape = (len(path_indices), cfg.n_steps)
    xi, z_b, z_perp = (np.empty(shape) for _ in range(3))
    for row, index in enumerate(path_indices):
        midprice, driver, residual = path_streams(cfg.master_seed, int(index))
        xi[row] = midprice.standard_normal(cfg.n_steps)
        z_b[row] = driver.standard_normal(cfg.n_steps)
        z_perp[row] = residual.standard_normal(cfg.n_steps)
    return PathNoise(xi=xi, z_b=z_b, z_perp=z_perp)


def _check_initial(spec: DiffusionSpec, value: float, name: str) -> None:
    if spec.is_cir and not value > 0:
        raise InvalidInitialState(f"{name} must be > 0 for CIR dynamics, got {value!r}")


def _euler_step(
    spec: DiffusionSpec, x: FloatArray, dt: float, sqrt_dt: float, z: FloatArray
) -> tuple[FloatArray, int]:
    if not spec.is_cir:
        return x + spec.drift(x) * dt + spec.diffusion(x) * sqrt_dt * z, 0
    level = np.maximum(x, 0.0)
    nxt = x + spec.drift(level) * dt + spec.diffusion(level) * sqrt_dt * z
    clamped = nxt < 0.0
    return np.where(clamped, 0.0, nxt), int(clamped.sum())


def simulate_impact_batch(
    model: MarketModel,
    cfg: SimConfig,
    a0: float,
    b0: float,
    path_indices: Sequence[int],
    horizon: float,
    noise: PathNoise | None = None,
) -> ImpactPath:
    """Simulate (a, b) for several paths at once with Euler full truncation.

    Raises:
        InvalidInitialState: If a CIR process starts at a non-positive level.
    """
    _check_initial(model.a_dyn, a0, "a0")
    _check_initial(model.b_dyn, b0, "b0")
    if noise is None:
        noise = draw_path_noise(cfg, path_indices)

    dt = cfg.step(horizon)
    sqrt_dt = math.sqrt(dt)
    rho_perp = math.sqrt(max(0.0, 1.0 - model.rho * model.rho))
    z_b = noise.z_b
    z_a = model.rho * z_b + rho_perp * noise.z_perp

    shape = (len(path_indices), cfg.n_steps + 1)
    a = np.empty(shape)
    b = np.empty(shape)
    a[:, 0] = a0
    b[:, 0] = b0
    clamps = 0
    for k in range(cfg.n_steps):
        a[:, k + 1], clamped_a = _euler_step(model.a_dyn, a[:, k], dt, sqrt_dt, z_a[:, k])
        b[:, k + 1], clamped_b = _euler_step(model.b_dyn, b[:, k], dt, sqrt_dt, z_b[:, k])
        clamps += clamped_a + clamped_b
    if clamps:
        logger.debug("%d truncation events over %d paths", clamps, len(path_indices))
    return ImpactPath(times=cfg.grid(horizon), a=a, b=b, z_a=z_a, z_b=z_b, clamps=clamps)


def simulate_impact_path(
    model: MarketModel,
    cfg: SimConfig,
    a0: float,
    b0: float,
    path_index: int,
    horizon: float,
    noise: PathNoise | None = None,
) -> ImpactPath:
    """Single-path view of a one-row batch; ``noise`` must then hold exactly that row."""
    batch = simulate_impact_batch(model, cfg, a0, b0, [path_index], horizon, noise=noise)
    return ImpactPath(
        times=batch.times,
        a=batch.a[0],
        b=batch.b[0],
        z_a=batch.z_a[0],
        z_b=batch.z_b[0],
        clamps=batch.clamps,
    )


def simulate_execution(
    path: ImpactPath,
    kind: StrategyKind,
    model: MarketModel,
    penalties: PenaltyParams,
    cfg: SimConfig,
    init: InitialState,
    midprice_noise: FloatArray,
) -> ExecutionTrajectory:
    """Run one strategy against simulated impact states and midprice noise.

    ``midprice_noise`` has the same leading shape as ``path.a`` and ``n_steps`` columns.
    In limiting regimes with forced liquidation the last step sells the remainder.
    """
    n = cfg.n_steps
    dt = cfg.step(penalties.T)
    shock = model.sigma * math.sqrt(dt)
    force = cfg.force_final_liquidation and penalties.regime.is_limiting
    times = path.times

    shape = path.a.shape
    X = np.empty(shape)
    S = np.empty(shape)
    Q = np.empty(shape)
    nu = np.empty(shape[:-1] + (n,))
    X[..., 0] = init.x0
    S[..., 0] = init.s0
    Q[..., 0] = init.q0

    for k in range(n):
        q = Q[..., k]
        a_k = path.a[..., k]
        b_k = path.b[..., k]
        if force and k == n - 1:
            nu_k = q / dt
        else:
            try:
                nu_k = rate(kind, times[k], q, a_k, b_k, model, penalties)
            except ModelError as exc:
                exc.rows = _failing_rows(kind, times[k], q, a_k, b_k, model, penalties)
                raise
        nu[..., k] = nu_k
        S[..., k + 1] = S[..., k] - model.g.value(b_k) * nu_k * dt + shock * midprice_noise[..., k]
        X[..., k + 1] = X[..., k] + nu_k * (S[..., k] - model.f.value(a_k) * nu_k) * dt
        Q[..., k + 1] = q - nu_k * dt
    if force:
        Q[..., n] = 0.0

    return ExecutionTrajectory(
        times=times, X=X, S=S, Q=Q, nu=nu, a=path.a, b=path.b, kind=kind.label
    )


def _failing_rows(
    kind: StrategyKind,
    t: float,
    q: FloatArray,
    a: FloatArray,
    b: FloatArray,
    model: MarketModel,
    penalties: PenaltyParams,
) -> tuple[int, ...]:
    """Flat positions of the batch rows on which ``rate`` fails on its own."""
    if np.ndim(q) == 0:
        return ()
    failing = []
    for index in np.ndindex(np.shape(q)):
        try:
            rate(kind, t, q[index], a[index], b[index], model, penalties)
        except ModelError:
            failing.append(int(np.ravel_multi_index(index, np.shape(q))))
    return tuple(failing)
