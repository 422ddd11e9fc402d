"""Experiment config discovery, parsing and overrides for the stochimpact CLI."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import orjson

from stochimpact_cli.cli.constants import CONFIGS_DIR, DEFAULT_CONFIG_FILE, PROJECT_ROOT
from stochimpact_cli.cli.exceptions import ConfigurationError, ParseError
from stochimpact_cli.src.core.config.experiment import ExperimentConfig, parse_experiment


class ConfigManager:
    """Finds, decodes and validates experiment configs."""

    def __init__(self, config_path: str | None = None) -> None:
        """Initialize the config manager.

        Args:
            config_path: Optional path to config file
        """
        self.config_path = config_path
        self._config_data: dict[str, Any] | None = None

    def find_config_file(self, config_path: str) -> Path:
        """Find the config file in various locations.

        Args:
            config_path: Path to config file (can be relative or absolute)

        Returns:
            Path to the found config file

        Raises:
            ConfigurationError: If config file is not found
        """
        config_path_obj = Path(config_path)

        if config_path_obj.is_absolute():
            if not config_path_obj.exists():
                raise ConfigurationError(
                    f"Config file not found at {config_path}",
                    config_path=str(config_path_obj),
                )
            return config_path_obj

        # Search locations in order of preference
        search_locations = [
            Path.cwd() / config_path,
            PROJECT_ROOT / config_path,
            CONFIGS_DIR / config_path,
        ]

        for location in search_locations:
            if location.is_file():
                return location

        error_msg = f"Config file '{config_path}' not found in any of these locations:"
        for path in search_locations:
            error_msg += f"\n  - {path}"

        raise ConfigurationError(error_msg, config_path=config_path)

    def load_config(self, config_path: str | None = None) -> dict[str, Any]:
        """Load and decode a JSON config file.

        Args:
            config_path: Optional path to config file

        Returns:
            Decoded configuration dictionary

        Raises:
            ConfigurationError: If the file cannot be found or read
            ParseError: If the file is not valid JSON
        """
        actual_path = self.find_config_file(
            config_path or self.config_path or DEFAULT_CONFIG_FILE
        )

        try:
            data = orjson.loads(actual_path.read_bytes())
        except orjson.JSONDecodeError as e:
            raise ParseError(
                f"Invalid JSON in config file {actual_path}: {e.msg}",
                config_path=str(actual_path),
                line=getattr(e, "lineno", None),
                column=getattr(e, "colno", None),
            ) from e
        except OSError as e:
            raise ConfigurationError(
                f"Failed to read config file: {e}",
                config_path=str(actual_path),
            ) from e

        if not isinstance(data, dict):
            raise ConfigurationError(
                "Config file must contain a JSON object", config_path=str(actual_path)
            )

        self._config_data = data
        self.config_path = str(actual_path)
        return data

    def load_experiment(self, config_path: str | None = None) -> ExperimentConfig:
        """Load a config file and validate it as an experiment.

        Raises:
            ConfigurationError: If loading fails
            ValidationError: Naming the first invalid field
        """
        return parse_experiment(self.load_config(config_path))

    def get_config(self) -> dict[str, Any]:
        """Get loaded configuration data.

        Raises:
            ConfigurationError: If no config is loaded
        """
        if self._config_data is None:
            raise ConfigurationError("No configuration loaded. Call load_config() first.")
        return self._config_data

    def get_config_value(self, key: str, default: Any = None) -> Any:
        """Get a specific configuration value.

        Args:
            key: Configuration key (supports dot notation)
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        if self._config_data is None:
            return default

        value: Any = self._config_data
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    @staticmethod
    def apply_overrides(
        config: ExperimentConfig,
        seed: int | None = None,
        paths: int | None = None,
        out: str | None = None,
    ) -> ExperimentConfig:
        """Return a copy of ``config`` with CLI overrides applied (values pre-validated)."""
        sim_update: dict[str, Any] = {}
        if seed is not None:
            sim_update["master_seed"] = seed
        if paths is not None:
            sim_update["M"] = paths
        update: dict[str, Any] = {}
        if sim_update:
            update["sim"] = config.sim.model_copy(update=sim_update)
        if out is not None:
            update["output"] = config.output.model_copy(update={"dir": out})
        return config.model_copy(update=update) if update else config
