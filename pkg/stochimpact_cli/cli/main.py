"""stochimpact CLI main entry point."""

import sys

import typer
from dotenv import load_dotenv

from stochimpact_cli.cli.commands.montecarlo import MonteCarloCommand
from stochimpact_cli.cli.commands.path import PathCommand
from stochimpact_cli.cli.commands.verify import VerifyCommand
from stochimpact_cli.cli.commands.version import VersionCommand
from stochimpact_cli.cli.constants import (
    DEFAULT_CONFIG_FILE,
    DEFAULT_PATH_INDEX,
    EXIT_FAILURE,
    EXIT_INTERRUPTED,
)
from stochimpact_cli.cli.core.output import OutputFormatter
from stochimpact_cli.cli.exceptions import StochImpactError
from stochimpact_cli.cli.logger import setup_cli_logging
from stochimpact_cli.src.core.config import get_settings


# Load environment variables
load_dotenv()

app = typer.Typer(
    name="stochimpact",
    help=(
        "Optimal liquidation under stochastic price impact: simulate paths, compare "
        "strategies by Monte Carlo, and verify the closed-form approximations"
    ),
    context_settings={"help_option_names": ["-h", "--help"]},
    no_args_is_help=True,
)

output = OutputFormatter()

ConfigOption = typer.Option(DEFAULT_CONFIG_FILE, "--config", "-c", help="Experiment config (JSON)")
OutOption = typer.Option(
    None, "--out", "-o", help="Output directory (default: config output.dir, then settings)"
)
SeedOption = typer.Option(None, "--seed", help="Override sim.master_seed")
VerboseOption = typer.Option(False, "--verbose", "-v", help="Enable verbose logging")
QuietOption = typer.Option(False, "--quiet", "-q", help="Suppress all output except errors")


def handle_exception(e: Exception) -> int:
    """Handle exceptions consistently across all commands.

    Args:
        e: Exception that occurred

    Returns:
        Appropriate exit code
    """
    if isinstance(e, StochImpactError):
        output.error(str(e))
        return e.exit_code

    output.error(f"Unexpected error: {e}")
    return EXIT_FAILURE


def _setup_logging(verbose: bool, quiet: bool) -> None:
    setup_cli_logging(get_settings().LOG_LEVEL, verbose=verbose, quiet=quiet)


@app.command()
def path(
    config: str = ConfigOption,
    out: str | None = OutOption,
    seed: int | None = SeedOption,
    path_index: int = typer.Option(
        DEFAULT_PATH_INDEX, "--path-index", "-i", help="Which path of the seeded family"
    ),
    strategy: list[str] | None = typer.Option(
        None, "--strategy", "-s", help="Strategy name to write (repeatable; default: all)"
    ),
    verbose: bool = VerboseOption,
    quiet: bool = QuietOption,
) -> None:
    """Write one simulated trajectory per strategy on a common impact path."""
    _setup_logging(verbose, quiet)

    try:
        command = PathCommand(output)
        exit_code = command.execute(
            config=config,
            out=out,
            seed=seed,
            path_index=path_index,
            strategies=strategy,
        )
        sys.exit(exit_code)
    except Exception as e:
        sys.exit(handle_exception(e))


@app.command()
def montecarlo(
    config: str = ConfigOption,
    out: str | None = OutOption,
    seed: int | None = SeedOption,
    paths: int | None = typer.Option(None, "--paths", "-M", help="Override sim.M"),
    workers: int | None = typer.Option(
        None, "--workers", "-w", help="Worker processes (default: STOCHIMPACT_WORKERS)"
    ),
    verbose: bool = VerboseOption,
    quiet: bool = QuietOption,
) -> None:
    """Compare strategies over M paths and write summary statistics."""
    _setup_logging(verbose, quiet)

    try:
        command = MonteCarloCommand(output)
        exit_code = command.execute(
            config=config,
            out=out,
            seed=seed,
            paths=paths,
            workers=workers,
        )
        sys.exit(exit_code)
    except Exception as e:
        sys.exit(handle_exception(e))


@app.command()
def verify(
    config: str = ConfigOption,
    out: str | None = OutOption,
    verbose: bool = VerboseOption,
    quiet: bool = QuietOption,
) -> None:
    """Check the closed forms against quadrature and finite-difference oracles."""
    _setup_logging(verbose, quiet)

    try:
        command = VerifyCommand(output)
        exit_code = command.execute(config=config, out=out)
        sys.exit(exit_code)
    except Exception as e:
        sys.exit(handle_exception(e))


@app.command()
def version(
    verbose: bool = VerboseOption,
    quiet: bool = QuietOption,
) -> None:
    """Show the CLI version."""
    _setup_logging(verbose, quiet)

    try:
        command = VersionCommand(output)
        exit_code = command.execute()
        sys.exit(exit_code)
    except Exception as e:
        sys.exit(handle_exception(e))


def main() -> None:
    """Main CLI entry point."""
    try:
        app()
    except KeyboardInterrupt:
        output.warning("\nOperation cancelled by user")
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_exception(e))


if __name__ == "__main__":
    main()
