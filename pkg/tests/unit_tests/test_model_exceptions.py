"""Tests for the model and numerical exception hierarchy."""

import pickle

import pytest

from stochimpact_cli.cli.constants import (
    EXIT_CONFIG_ERROR,
    EXIT_FAILURE,
    EXIT_MODEL_ERROR,
    EXIT_VALIDATION_ERROR,
)
from stochimpact_cli.cli.exceptions import (
    ConfigurationError,
    FileOperationError,
    ParseError,
    StochImpactError,
    ValidationError,
)
from stochimpact_cli.src.core.exceptions import (
    DegenerateZeta,
    ModelError,
    NonConvergence,
    NonPositiveTemporaryImpact,
    PathFailure,
    SingularDenominator,
)


class TestExitCodes:
    @pytest.mark.parametrize(
        ("error", "code"),
        [
            (StochImpactError("x"), 1),
            (FileOperationError("x", "out.csv"), 1),
            (ConfigurationError("x"), 2),
            (ParseError("x", line=1, column=2), 2),
            (ValidationError("x", field="sim.M"), 3),
            (ModelError("x"), 4),
            (NonConvergence("x"), 4),
        ],
    )
    def test_exit_codes(self, error, code):
        assert error.exit_code == code

    def test_codes_come_from_cli_constants(self):
        assert StochImpactError("x").exit_code == EXIT_FAILURE
        assert ConfigurationError("x").exit_code == EXIT_CONFIG_ERROR
        assert ValidationError("x").exit_code == EXIT_VALIDATION_ERROR
        assert ModelError("x").exit_code == EXIT_MODEL_ERROR

    def test_parse_error_location(self):
        error = ParseError("Invalid JSON", config_path="a.json", line=4, column=7)
        assert str(error) == "Invalid JSON (line 4, column 7)"
        assert isinstance(error, ConfigurationError)


class TestModelErrors:
    def test_message_carries_code(self):
        assert str(DegenerateZeta("zeta undefined")) == "DEGENERATE_ZETA: zeta undefined"
        assert ModelError().error_code == "MODEL_ERROR"

    def test_path_failure(self):
        error = PathFailure(12, "order1", "f(a) must be > 0")
        assert error.path_index == 12
        assert str(error) == (
            "PATH_FAILURE: path 12 failed under strategy 'order1': f(a) must be > 0"
        )

    @pytest.mark.parametrize(
        "error",
        [
            PathFailure(3, "ac", "boom"),
            NonPositiveTemporaryImpact("bad f", positions=(1, 4)),
            SingularDenominator("blow-up", blowup_time=0.97),
            DegenerateZeta("zeta undefined"),
        ],
    )
    def test_errors_survive_pickling(self, error):
        restored = pickle.loads(pickle.dumps(error))  # noqa: S301
        assert type(restored) is type(error)
        assert str(restored) == str(error)
        assert restored.__dict__ == error.__dict__
