"""Unit tests for CLI logger configuration."""

import logging
from io import StringIO

import pytest

from stochimpact_cli.cli.logger import (
    CLILoggerMixin,
    create_debug_logger,
    get_logger,
    setup_cli_logging,
)


@pytest.fixture
def restore_root_logger():
    """Put the ``stochimpact`` logger back the way it was."""
    root = logging.getLogger("stochimpact")
    saved = (root.level, root.handlers[:], root.propagate)
    yield root
    root.setLevel(saved[0])
    root.handlers[:] = saved[1]
    root.propagate = saved[2]


class TestCLILoggerMixin:
    """Test CLILoggerMixin."""

    def test_mixin_logger_name(self):
        """The mixin names the logger after the class."""

        class MontecarloCommand(CLILoggerMixin):
            pass

        command = MontecarloCommand()
        assert command.logger.name == "stochimpact.MontecarloCommand"


class TestGetLogger:
    """Test get_logger function."""

    def test_custom_level_and_stream(self):
        stream = StringIO()
        logger = get_logger("stream_check", level=logging.DEBUG, stream=stream)
        logger.debug("hello %s", "there")
        assert logger.level == logging.DEBUG
        assert "hello there" in stream.getvalue()
        assert logger.propagate is False

    def test_handlers_are_not_duplicated(self):
        first = get_logger("dedupe_check")
        second = get_logger("dedupe_check")
        assert first is second
        assert len(second.handlers) == 1

    def test_debug_logger(self):
        assert create_debug_logger("debug_check").level == logging.DEBUG


class TestSetupCliLogging:
    """Test setup_cli_logging function."""

    def test_level_name(self, restore_root_logger):
        setup_cli_logging("warning")
        assert restore_root_logger.level == logging.WARNING
        assert len(restore_root_logger.handlers) == 1

    def test_unknown_level_name(self, restore_root_logger):
        setup_cli_logging("chatty")
        assert restore_root_logger.level == logging.INFO

    def test_quiet_wins(self, restore_root_logger):
        setup_cli_logging(logging.DEBUG, quiet=True, verbose=True)
        assert restore_root_logger.level == logging.ERROR

    def test_verbose(self, restore_root_logger):
        setup_cli_logging(verbose=True)
        assert restore_root_logger.level == logging.DEBUG

    def test_repeated_setup_replaces_handler(self, restore_root_logger):
        setup_cli_logging()
        setup_cli_logging()
        assert len(restore_root_logger.handlers) == 1

    def test_engine_loggers_inherit(self, restore_root_logger):
        setup_cli_logging(logging.ERROR)
        engine = logging.getLogger("stochimpact.engine.montecarlo")
        assert engine.getEffectiveLevel() == logging.ERROR
