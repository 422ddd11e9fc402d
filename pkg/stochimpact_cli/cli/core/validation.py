"""Validation of command-line overrides."""

import re
from pathlib import Path
from typing import Any

from stochimpact_cli.cli.exceptions import ValidationError


_STRATEGY_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


class Validator:
    """Input validation utilities."""

    @staticmethod
    def validate_seed(seed: int) -> int:
        """Validate a master seed (64-bit unsigned).

        Raises:
            ValidationError: If seed is out of range
        """
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ValidationError("Seed must be an integer", field="seed")

        if seed < 0 or seed >= 2**64:
            raise ValidationError("Seed must lie in [0, 2**64)", field="seed")

        return seed

    @staticmethod
    def validate_path_count(paths: int) -> int:
        """Validate the number of Monte Carlo paths.

        Raises:
            ValidationError: If the count is not positive
        """
        if not isinstance(paths, int) or paths < 1:
            raise ValidationError("Path count must be a positive integer", field="paths")
        return paths

    @staticmethod
    def validate_path_index(index: int) -> int:
        if not isinstance(index, int) or index < 0:
            raise ValidationError("Path index must be >= 0", field="path_index")
        return index

    @staticmethod
    def validate_workers(workers: int) -> int:
        if not isinstance(workers, int) or workers < 1:
            raise ValidationError("Workers must be a positive integer", field="workers")
        return workers

    @staticmethod
    def validate_output_dir(path: str | Path) -> Path:
        """Validate an output directory.

        Args:
            path: Directory to write artifacts into (created if missing)

        Returns:
            Validated Path object

        Raises:
            ValidationError: If path exists and is not a directory
        """
        try:
            path_obj = Path(path)
        except (TypeError, ValueError) as e:
            raise ValidationError(f"Invalid path: {e}", field="out") from e

        if path_obj.exists() and not path_obj.is_dir():
            raise ValidationError(f"Output path is not a directory: {path_obj}", field="out")

        return path_obj

    @staticmethod
    def validate_strategy_name(name: str) -> str:
        """Strategy names end up in file and column names."""
        if not _STRATEGY_NAME.match(name):
            raise ValidationError(
                f"Strategy name '{name}' must start with an alphanumeric character and "
                "contain only alphanumeric, underscore, period, or hyphen",
                field="strategies.name",
            )
        return name


def validate_cli_options(
    seed: int | None = None,
    paths: int | None = None,
    workers: int | None = None,
    out: str | None = None,
) -> dict[str, Any]:
    """Validate the override options shared by the run commands.

    Returns:
        Dictionary of validated options that were given
    """
    validated: dict[str, Any] = {}
    if seed is not None:
        validated["seed"] = Validator.validate_seed(seed)
    if paths is not None:
        validated["paths"] = Validator.validate_path_count(paths)
    if workers is not None:
        validated["workers"] = Validator.validate_workers(workers)
    if out is not None:
        validated["out"] = Validator.validate_output_dir(out)
    return validated
