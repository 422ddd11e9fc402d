"""stochimpact CLI package."""

from stochimpact_cli.cli.constants import CLI_VERSION as __version__


__all__ = ["__version__"]
