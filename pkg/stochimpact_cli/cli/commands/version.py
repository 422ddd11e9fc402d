"""Version command implementation."""

import platform
from typing import Any

import numpy as np

from stochimpact_cli.cli.commands import BaseCommand
from stochimpact_cli.cli.constants import CLI_VERSION, EXIT_SUCCESS


class VersionCommand(BaseCommand):
    """Print the CLI version and the numeric runtime it runs on."""

    def execute(self, **kwargs: Any) -> int:
        try:
            self.output.print_banner("Version", color="green")
            self.output.success(f"stochimpact-cli\n  Version: {CLI_VERSION}")
            self.output.info(
                f"Runtime\n  Python: {platform.python_version()}\n  numpy: {np.__version__}"
            )
            return EXIT_SUCCESS

        except Exception as e:
            return self.handle_error(e)
