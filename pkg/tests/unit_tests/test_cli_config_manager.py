"""Tests for the CLI config manager."""

import json

import pytest

from stochimpact_cli.cli.core.config import ConfigManager
from stochimpact_cli.cli.exceptions import ConfigurationError, ParseError, ValidationError


class TestConfigManager:
    """Test suite for ConfigManager class."""

    def test_initialization(self):
        """A fresh manager has no path and no data."""
        manager = ConfigManager()
        assert manager.config_path is None
        assert manager._config_data is None

    def test_find_absolute_path(self, write_config, small_config):
        """Absolute paths are returned as-is."""
        path = write_config(small_config)
        assert str(ConfigManager().find_config_file(path)) == path

    def test_find_absolute_path_not_found(self, tmp_path):
        """A missing absolute path is a configuration error."""
        with pytest.raises(ConfigurationError) as exc_info:
            ConfigManager().find_config_file(str(tmp_path / "missing.json"))
        assert "Config file not found" in str(exc_info.value)
        assert exc_info.value.exit_code == 2

    def test_find_relative_to_cwd(self, tmp_path, monkeypatch, small_config):
        """Relative paths are searched from the working directory first."""
        (tmp_path / "mine.json").write_text(json.dumps(small_config))
        monkeypatch.chdir(tmp_path)
        assert ConfigManager().find_config_file("mine.json") == tmp_path / "mine.json"

    def test_find_shipped_config(self, tmp_path, monkeypatch):
        """Shipped configs are found by bare file name."""
        monkeypatch.chdir(tmp_path)
        found = ConfigManager().find_config_file("example2.json")
        assert found.name == "example2.json"
        assert found.parent.name == "configs"

    def test_not_found_lists_locations(self, tmp_path, monkeypatch):
        """The error message lists every searched location."""
        monkeypatch.chdir(tmp_path)
        with pytest.raises(ConfigurationError) as exc_info:
            ConfigManager().find_config_file("nowhere.json")
        assert str(exc_info.value).count("\n  - ") == 3

    def test_load_config(self, write_config, small_config):
        """Loading decodes the document and records the resolved path."""
        path = write_config(small_config)
        manager = ConfigManager(path)
        data = manager.load_config()
        assert data["name"] == "small"
        assert manager.get_config() is data
        assert manager.config_path == path

    def test_load_invalid_json_reports_position(self, tmp_path):
        """Syntax errors carry line and column."""
        path = tmp_path / "broken.json"
        path.write_text('{\n  "name": "x",\n  "sim": {,}\n}')
        with pytest.raises(ParseError) as exc_info:
            ConfigManager(str(path)).load_config()
        assert exc_info.value.line == 3
        assert exc_info.value.column is not None
        assert "line 3" in str(exc_info.value)

    def test_load_non_object(self, tmp_path):
        """A top-level array is rejected."""
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigurationError, match="JSON object"):
            ConfigManager(str(path)).load_config()

    def test_load_experiment_validates(self, write_config, small_config):
        """Schema errors surface as validation errors."""
        small_config["sim"]["n_steps"] = 1
        with pytest.raises(ValidationError) as exc_info:
            ConfigManager(write_config(small_config)).load_experiment()
        assert exc_info.value.field == "sim.n_steps"

    def test_get_config_before_load(self):
        """get_config needs a loaded document."""
        with pytest.raises(ConfigurationError):
            ConfigManager().get_config()

    def test_get_config_value(self, write_config, small_config):
        """Dotted lookups walk nested blocks."""
        manager = ConfigManager(write_config(small_config))
        assert manager.get_config_value("sim.M") is None
        manager.load_config()
        assert manager.get_config_value("sim.M") == 8
        assert manager.get_config_value("penalties.kappa") == 10.0
        assert manager.get_config_value("sim.missing", "fallback") == "fallback"


class TestApplyOverrides:
    """Command-line overrides on a parsed experiment."""

    def test_no_overrides_returns_same_object(self, write_config, small_config):
        config = ConfigManager(write_config(small_config)).load_experiment()
        assert ConfigManager.apply_overrides(config) is config

    def test_overrides(self, write_config, small_config):
        config = ConfigManager(write_config(small_config)).load_experiment()
        updated = ConfigManager.apply_overrides(config, seed=9, paths=3, out="elsewhere")
        assert updated.sim.master_seed == 9
        assert updated.sim.M == 3
        assert updated.sim.n_steps == 50
        assert updated.output.dir == "elsewhere"
        assert config.sim.master_seed == 42
