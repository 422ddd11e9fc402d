"""Tests for the artifact writers."""

import csv

import numpy as np
import orjson
import pytest

from stochimpact_cli.cli.exceptions import FileOperationError
from stochimpact_cli.src.engine.montecarlo import run_experiment
from stochimpact_cli.src.engine.reporting import (
    TRAJECTORY_COLUMNS,
    format_number,
    relative_column,
    verification_payload,
    write_json,
    write_paths_csv,
    write_trajectory_csv,
)
from stochimpact_cli.src.engine.simulation import ExecutionTrajectory, SimConfig
from stochimpact_cli.src.engine.strategy import StrategyKind
from stochimpact_cli.src.engine.verify import ResidualReport


def _read_csv(path):
    with path.open(newline="") as handle:
        return list(csv.reader(handle))


class TestTrajectoryCsv:
    def test_rows_and_trailing_nan(self, tmp_path):
        traj = ExecutionTrajectory(
            times=np.array([0.0, 0.5, 1.0]),
            X=np.array([0.0, 1.0, 2.0]),
            S=np.array([40.0, 40.5, 41.0]),
            Q=np.array([2.0, 1.0, 0.0]),
            nu=np.array([2.0, 2.0]),
            a=np.array([1e-4, 1.1e-4, 1.2e-4]),
            b=np.array([5e-4, 5e-4, 5e-4]),
            kind="order0",
        )
        path = tmp_path / "path_order0.csv"
        write_trajectory_csv(path, traj)
        rows = _read_csv(path)
        assert tuple(rows[0]) == TRAJECTORY_COLUMNS
        assert len(rows) == 4
        assert rows[1] == ["0", "0.0001", "0.00050000000000000001", "40", "2", "0", "2"]
        assert rows[-1][-1] == "nan"

    def test_batch_trajectory_is_rejected(self, tmp_path):
        grid = np.zeros((2, 3))
        traj = ExecutionTrajectory(grid[0], grid, grid, grid, grid[:, :2], grid, grid, "hold")
        with pytest.raises(ValueError, match="single-path"):
            write_trajectory_csv(tmp_path / "x.csv", traj)

    def test_numbers_round_trip(self):
        value = 0.1 + 0.2
        assert float(format_number(value)) == value


class TestSummaryArtifacts:
    @pytest.fixture
    def summary(self, example2_model, nonlimiting, example2_init):
        return run_experiment(
            example2_model,
            nonlimiting,
            SimConfig(n_steps=20, master_seed=3),
            {"order0": StrategyKind.order0(), "order1": StrategyKind.order1()},
            4,
            example2_init,
        )

    def test_paths_csv(self, tmp_path, summary):
        path = tmp_path / "paths.csv"
        write_paths_csv(path, summary)
        rows = _read_csv(path)
        assert rows[0] == ["path_index", "phi_order0", "phi_order1", "r_order1_vs_order0"]
        assert [row[0] for row in rows[1:]] == ["0", "1", "2", "3"]
        assert float(rows[1][1]) == summary.samples[0].phi_by_strategy["order0"]

    def test_summary_json_is_deterministic(self, tmp_path, summary):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        write_json(first, summary.to_dict())
        write_json(second, summary.to_dict())
        assert first.read_bytes() == second.read_bytes()
        data = orjson.loads(first.read_bytes())
        assert data["M"] == 4
        assert data["relative"][0]["baseline"] == "order0"

    def test_unserializable_payload(self, tmp_path):
        with pytest.raises(FileOperationError):
            write_json(tmp_path / "bad.json", {"value": object()})

    def test_relative_column(self):
        assert relative_column("ac", "order1") == "r_order1_vs_ac"


class TestVerificationPayload:
    def test_collects_failures_and_skips(self):
        reports = [
            ResidualReport("riccati_residual", "grid", 1e-12, 1e-10, 1e-7, True),
            ResidualReport("psi0_identity", "grid", 1.0, 1.0, 1e-8, False),
            ResidualReport.not_applicable("gamma0_moments", "phi = 0"),
        ]
        payload = verification_payload(reports)
        assert payload["passed"] is False
        assert payload["failed"] == ["psi0_identity"]
        assert payload["not_applicable"] == ["gamma0_moments"]
        assert len(payload["reports"]) == 3
