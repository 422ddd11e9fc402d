"""Artifact writers: trajectory and per-path CSV files, JSON summaries and metadata.

File contents depend only on their inputs; no timestamps are written.
"""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import orjson

from stochimpact_cli.cli.exceptions import FileOperationError

from .montecarlo import PerformanceSummary
from .simulation import ExecutionTrajectory
from .verify import ResidualReport


logger = logging.getLogger("stochimpact.engine.reporting")

TRAJECTORY_COLUMNS: tuple[str, ...] = ("t", "a", "b", "S", "Q", "X", "nu")
TRAJECTORY_UNITS: dict[str, str] = {
    "t": "time (horizon units)",
    "a": "temporary impact state",
    "b": "permanent impact state",
    "S": "price per share",
    "Q": "shares",
    "X": "cash",
    "nu": "shares per unit time; nan at the final grid point",
}
SUMMARY_UNITS: dict[str, str] = {
    "phi": "cash",
    "relative": "basis points (x 1e4)",
}
_JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def format_number(value: float) -> str:
    """17 significant digits, enough to re-parse every double exactly."""
    return format(float(value), ".17g")


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise FileOperationError(f"Failed to write {path}: {exc}", str(path)) from exc
    logger.debug("Wrote %s", path)


def write_json(path: Path, payload: Mapping[str, Any]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(orjson.dumps(payload, option=_JSON_OPTIONS) + b"\n")
    except (OSError, TypeError) as exc:
        raise FileOperationError(f"Failed to write {path}: {exc}", str(path)) from exc
    logger.debug("Wrote %s", path)


def write_trajectory_csv(path: Path, trajectory: ExecutionTrajectory) -> None:
    """One row per grid point with header ``t,a,b,S,Q,X,nu``."""
    if trajectory.X.ndim != 1:
        raise ValueError("write_trajectory_csv expects a single-path trajectory")
    nu = np.append(trajectory.nu, np.nan)
    columns = (
        trajectory.times,
        trajectory.a,
        trajectory.b,
        trajectory.S,
        trajectory.Q,
        trajectory.X,
        nu,
    )
    rows = ([format_number(v) for v in row] for row in zip(*columns))
    _write_rows(path, TRAJECTORY_COLUMNS, rows)


def relative_column(baseline: str, candidate: str) -> str:
    return f"r_{candidate}_vs_{baseline}"


def write_paths_csv(path: Path, summary: PerformanceSummary) -> None:
    """Per-path criteria and relative statistics, untrimmed."""
    header = [
        "path_index",
        *(f"phi_{name}" for name in summary.strategies),
        *(relative_column(r.baseline, r.candidate) for r in summary.relative),
    ]
    rows = (
        [
            str(sample.path_index),
            *(format_number(sample.phi_by_strategy[name]) for name in summary.strategies),
            *(format_number(r.per_path_bp[row]) for r in summary.relative),
        ]
        for row, sample in enumerate(summary.samples)
    )
    _write_rows(path, header, rows)


def verification_payload(reports: Sequence[ResidualReport]) -> dict[str, Any]:
    return {
        "passed": all(r.passed for r in reports),
        "failed": [r.name for r in reports if not r.passed],
        "not_applicable": [r.name for r in reports if not r.applicable],
        "reports": [r.to_dict() for r in reports],
    }
