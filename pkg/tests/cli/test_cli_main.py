import pytest
from typer.testing import CliRunner

import stochimpact_cli.cli.main as main_mod
from stochimpact_cli.cli.exceptions import ConfigurationError, ValidationError


runner = CliRunner()


@pytest.fixture(autouse=True)
def no_logging_setup(monkeypatch):
    monkeypatch.setattr(main_mod, "setup_cli_logging", lambda *args, **kwargs: None)


def test_path_command_delegates(monkeypatch):
    called = {}

    def fake_execute(self, **kwargs):
        called.update(kwargs)
        return 0

    monkeypatch.setattr(main_mod.PathCommand, "execute", fake_execute)

    result = runner.invoke(
        main_mod.app,
        ["path", "-c", "mine.json", "--seed", "5", "-i", "3", "-s", "ac", "-s", "order1"],
    )

    assert result.exit_code == 0
    assert called["config"] == "mine.json"
    assert called["seed"] == 5
    assert called["path_index"] == 3
    assert called["strategies"] == ["ac", "order1"]
    assert called["out"] is None


def test_path_defaults(monkeypatch):
    called = {}
    monkeypatch.setattr(
        main_mod.PathCommand, "execute", lambda self, **kwargs: called.update(kwargs) or 0
    )
    result = runner.invoke(main_mod.app, ["path"])
    assert result.exit_code == 0
    assert called["config"] == "configs/example2.json"
    assert called["path_index"] == 0
    assert not called["strategies"]


def test_montecarlo_command_delegates(monkeypatch):
    called = {}
    monkeypatch.setattr(
        main_mod.MonteCarloCommand, "execute", lambda self, **kwargs: called.update(kwargs) or 0
    )
    result = runner.invoke(
        main_mod.app, ["montecarlo", "-M", "100", "-w", "2", "-o", "out", "--verbose"]
    )
    assert result.exit_code == 0
    assert called["paths"] == 100
    assert called["workers"] == 2
    assert called["out"] == "out"
    assert called["seed"] is None


def test_verify_exit_code_is_propagated(monkeypatch):
    monkeypatch.setattr(main_mod.VerifyCommand, "execute", lambda self, **kwargs: 1)
    result = runner.invoke(main_mod.app, ["verify", "-c", "x.json"])
    assert result.exit_code == 1


def test_version_command(monkeypatch):
    called = []
    monkeypatch.setattr(
        main_mod.VersionCommand, "execute", lambda self: called.append(True) or 0
    )
    result = runner.invoke(main_mod.app, ["version"])
    assert result.exit_code == 0
    assert len(called) == 1


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (ConfigurationError("missing"), 2),
        (ValidationError("bad", field="seed"), 3),
        (RuntimeError("boom"), 1),
    ],
)
def test_escaped_exceptions_map_to_exit_codes(monkeypatch, error, code):
    def explode(self, **kwargs):
        raise error

    monkeypatch.setattr(main_mod.MonteCarloCommand, "execute", explode)
    result = runner.invoke(main_mod.app, ["montecarlo"])
    assert result.exit_code == code


def test_no_arguments_shows_help():
    result = runner.invoke(main_mod.app, [])
    assert "montecarlo" in result.output


def test_main_handles_keyboard_interrupt(monkeypatch):
    def interrupt():
        raise KeyboardInterrupt

    monkeypatch.setattr(main_mod, "app", interrupt)
    with pytest.raises(SystemExit) as exc_info:
        main_mod.main()
    assert exc_info.value.code == 130
