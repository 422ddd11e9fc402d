"""Monte Carlo comparison of strategies under common random numbers."""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.core.exceptions import ModelError, PathFailure

from .model import FloatArray, MarketModel, PenaltyParams, Regime
from .simulation import (
    ExecutionTrajectory,
    InitialState,
    SimConfig,
    draw_path_noise,
    simulate_execution,
    simulate_impact_batch,
)
from .strategy import StrategyKind


logger = logging.getLogger("stochimpact.engine.montecarlo")

BASIS_POINTS = 1e4
QUANTILE_LEVELS: tuple[int, ...] = (5, 25, 50, 75, 95)
_CENTRAL_MASS = (0.5, 99.5)
_CLAMP_WARN_FRACTION = 0.01


@dataclass(frozen=True, slots=True)
class PerformanceSample:
    path_index: int
    phi_by_strategy: dict[str, float]


@dataclass(frozen=True, slots=True)
class Histogram:
    edges: tuple[float, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class RelativePerformance:
    """Relative performance of ``candidate`` over ``baseline`` in basis points.

    ``per_path_bp`` is aligned with the samples and holds nan on excluded paths.
    """

    baseline: str
    candidate: str
    ratio_of_means_bp: float
    mean_bp: float | None
    std_error_bp: float | None
    quantiles: dict[int, float]
    histogram: Histogram
    n_used: int
    non_positive_baseline: tuple[int, ...]
    per_path_bp: FloatArray = field(repr=False, compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "baseline": self.baseline,
            "candidate": self.candidate,
            "ratio_of_means_bp": self.ratio_of_means_bp,
            "mean_bp": self.mean_bp,
            "std_error_bp": self.std_error_bp,
            "quantiles": {str(level): value for level, value in self.quantiles.items()},
            "histogram": {
                "edges": list(self.histogram.edges),
                "counts": list(self.histogram.counts),
            },
            "n_used": self.n_used,
            "non_positive_baseline": list(self.non_positive_baseline),
        }


@dataclass(frozen=True, slots=True)
class PerformanceSummary:
    M: int
    master_seed: int
    regime: str
    strategies: tuple[str, ...]
    mean_phi: dict[str, float]
    std_error_phi: dict[str, float | None]
    relative: tuple[RelativePerformance, ...]
    samples: tuple[PerformanceSample, ...] = field(repr=False)
    clamp_fraction: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "M": self.M,
            "master_seed": self.master_seed,
            "regime": self.regime,
            "strategies": list(self.strategies),
            "mean_phi": self.mean_phi,
            "std_error_phi": self.std_error_phi,
            "clamp_fraction": self.clamp_fraction,
            "relative": [entry.to_dict() for entry in self.relative],
        }


def performance(traj: ExecutionTrajectory, penalties: PenaltyParams) -> float | FloatArray:
    """Per-path performance criterion; vectorized over leading path axes."""
    n_steps = traj.Q.shape[-1] - 1
    dt = penalties.T / n_steps
    x_end = traj.X[..., -1]
    running = penalties.phi * np.sum(traj.Q[..., :-1] ** 2, axis=-1) * dt
    match penalties.regime:
        case Regime.NONLIMITING:
            q_end = traj.Q[..., -1]
            value = x_end + q_end * (traj.S[..., -1] - penalties.kappa * q_end) - running
        case Regime.KAPPA_INFINITY:
            value = x_end - running
        case Regime.KAPPA_INFINITY_PHI_ZERO:
            value = x_end
    return np.asarray(value, dtype=float)[()]


def nearest_rank_quantiles(
    values: Sequence[float] | FloatArray, levels: Sequence[int] = QUANTILE_LEVELS
) -> dict[int, float]:
    """Nearest-rank quantiles: the value of rank ceil(p/100 * n) in sorted order."""
    ordered = np.sort(np.asarray(values, dtype=float))
    n = ordered.size
    if n == 0:
        return {}
    return {p: float(ordered[max(1, -(-p * n // 100)) - 1]) for p in levels}


def histogram_bins(values: FloatArray) -> Histogram:
    """Freedman-Diaconis histogram of the central 99% of ``values``."""
    if values.size == 0:
        return Histogram(edges=(), counts=())
    lo, hi = np.percentile(values, _CENTRAL_MASS)
    core = values[(values >= lo) & (values <= hi)]
    counts, edges = np.histogram(core, bins="fd")
    return Histogram(
        edges=tuple(float(e) for e in edges), counts=tuple(int(c) for c in counts)
    )


def _std_error(values: FloatArray) -> float | None:
    if values.size < 2:  # noqa: PLR2004
        return None
    return float(values.std(ddof=1) / math.sqrt(values.size))


def relative_performance(
    samples: Sequence[PerformanceSample], baseline: str, candidate: str
) -> RelativePerformance:
    """Per-path and ratio-of-means relative improvement of ``candidate`` over ``baseline``.

    Paths whose baseline criterion is not positive are excluded from the per-path
    statistic and listed in ``non_positive_baseline``.
    """
    for name in (baseline, candidate):
        if any(name not in s.phi_by_strategy for s in samples):
            raise ValidationError(f"strategy {name!r} missing from samples", field="comparisons")
    phi_base = np.array([s.phi_by_strategy[baseline] for s in samples], dtype=float)
    phi_cand = np.array([s.phi_by_strategy[candidate] for s in samples], dtype=float)

    base_mean = float(phi_base.mean())
    if base_mean == 0.0:
        logger.warning(
            "mean %s criterion is zero; ratio of means for %s/%s is undefined",
            baseline,
            candidate,
            baseline,
        )
        ratio_of_means = math.nan
    else:
        ratio_of_means = float((phi_cand.mean() - base_mean) / base_mean * BASIS_POINTS)

    positive = phi_base > 0
    excluded = tuple(samples[i].path_index for i in np.flatnonzero(~positive))
    if excluded:
        logger.warning(
            "%d path(s) with non-positive %s criterion excluded from %s/%s statistics",
            len(excluded),
            baseline,
            candidate,
            baseline,
        )
    per_path = np.full(phi_base.shape, np.nan)
    per_path[positive] = (
        (phi_cand[positive] - phi_base[positive]) / phi_base[positive] * BASIS_POINTS
    )
    used = per_path[positive]

    return RelativePerformance(
        baseline=baseline,
        candidate=candidate,
        ratio_of_means_bp=ratio_of_means,
        mean_bp=float(used.mean()) if used.size else None,
        std_error_bp=_std_error(used),
        quantiles=nearest_rank_quantiles(used),
        histogram=histogram_bins(used),
        n_used=int(used.size),
        non_positive_baseline=excluded,
        per_path_bp=per_path,
    )


@dataclass(frozen=True, slots=True)
class _BatchJob:
    model: MarketModel
    penalties: PenaltyParams
    cfg: SimConfig
    strategies: dict[str, StrategyKind]
    init: InitialState

    def run(self, indices: range) -> tuple[dict[str, FloatArray], int]:
        noise = draw_path_noise(self.cfg, indices)
        path = simulate_impact_batch(
            self.model,
            self.cfg,
            self.init.a0,
            self.init.b0,
            indices,
            self.penalties.T,
            noise=noise,
        )
        phi: dict[str, FloatArray] = {}
        for name, kind in self.strategies.items():
            try:
                trajectory = simulate_execution(
                    path, kind, self.model, self.penalties, self.cfg, self.init, noise.xi
                )
            except ModelError as exc:
                raise PathFailure(_failing_path(exc, indices), name, str(exc)) from exc
            phi[name] = np.atleast_1d(performance(trajectory, self.penalties))
        logger.debug("batch %d-%d done", indices.start, indices.stop - 1)
        return phi, path.clamps


def _failing_path(exc: ModelError, indices: range) -> int:
    return indices[exc.rows[0]] if exc.rows else indices.start


def run_experiment(
    model: MarketModel,
    penalties: PenaltyParams,
    cfg: SimConfig,
    strategies: Mapping[str, StrategyKind],
    M: int,
    init: InitialState,
    comparisons: Sequence[tuple[str, str]] | None = None,
    workers: int = 1,
    batch_size: int = 500,
) -> PerformanceSummary:
    """Simulate ``M`` paths and compare every strategy on each of them.

    The batch partition depends only on ``M`` and ``batch_size``, so results are identical
    for any number of workers.

    Raises:
        ValidationError: On an empty strategy set, M < 1 or unknown comparison names.
        PathFailure: If a strategy fails on some path.
    """
    if M < 1:
        raise ValidationError("M must be >= 1", field="sim.M")
    names = list(strategies)
    if not names:
        raise ValidationError("at least one strategy is required", field="strategies")
    pairs = list(comparisons) if comparisons is not None else list(zip(names, names[1:]))
    for baseline, candidate in pairs:
        for name in (baseline, candidate):
            if name not in strategies:
                raise ValidationError(f"unknown strategy {name!r}", field="comparisons")

    size = max(1, batch_size)
    batches = [range(start, min(start + size, M)) for start in range(0, M, size)]
    job = _BatchJob(model, penalties, cfg, dict(strategies), init)
    logger.info(
        "Running %d paths in %d batch(es) on %d worker(s), regime %s",
        M,
        len(batches),
        workers,
        penalties.regime.value,
    )
    if workers <= 1 or len(batches) == 1:
        results = [job.run(batch) for batch in batches]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(job.run, batches))

    phi = {name: np.concatenate([r[0][name] for r in results]) for name in names}
    clamp_fraction = sum(r[1] for r in results) / (2.0 * M * cfg.n_steps)
    if clamp_fraction > _CLAMP_WARN_FRACTION:
        logger.warning("truncation clamps on %.2f%% of impact steps", 100 * clamp_fraction)

    samples = tuple(
        PerformanceSample(i, {name: float(phi[name][i]) for name in names}) for i in range(M)
    )
    relative = tuple(relative_performance(samples, b, c) for b, c in pairs)
    logger.info("Finished %d paths", M)
    return PerformanceSummary(
        M=M,
        master_seed=cfg.master_seed,
        regime=penalties.regime.value,
        strategies=tuple(names),
        mean_phi={name: float(values.mean()) for name, values in phi.items()},
        std_error_phi={name: _std_error(values) for name, values in phi.items()},
        relative=relative,
        samples=samples,
        clamp_fraction=clamp_fraction,
    )
