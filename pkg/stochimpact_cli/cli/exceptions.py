"""Custom exceptions for the stochimpact CLI."""

from stochimpact_cli.cli.constants import EXIT_CONFIG_ERROR, EXIT_FAILURE, EXIT_VALIDATION_ERROR


class StochImpactError(Exception):
    """Base exception for all stochimpact errors."""

    def __init__(self, message: str, exit_code: int = EXIT_FAILURE) -> None:
        """Initialize the exception with a message and exit code.

        Args:
            message: Error message to display
            exit_code: Exit code to use when terminating
        """
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code


class ConfigurationError(StochImpactError):
    """Raised when an experiment config cannot be found or read."""

    def __init__(self, message: str, config_path: str | None = None) -> None:
        """Initialize configuration error.

        Args:
            message: Error message
            config_path: Path to the problematic config file
        """
        super().__init__(message, exit_code=EXIT_CONFIG_ERROR)
        self.config_path = config_path


class ParseError(ConfigurationError):
    """Raised when a config file is not syntactically valid JSON."""

    def __init__(
        self,
        message: str,
        config_path: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        """Initialize parse error.

        Args:
            message: Error message
            config_path: Path to the problematic config file
            line: 1-based line of the syntax error
            column: 1-based column of the syntax error
        """
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}", config_path=config_path)
        self.line = line
        self.column = column


class ValidationError(StochImpactError):
    """Raised when input validation fails."""

    def __init__(self, message: str, field: str | None = None) -> None:
        """Initialize validation error.

        Args:
            message: Error message
            field: Dotted name of the field that failed validation
        """
        super().__init__(message, exit_code=EXIT_VALIDATION_ERROR)
        self.field = field


class FileOperationError(StochImpactError):
    """Raised when writing or reading an artifact fails."""

    def __init__(self, message: str, file_path: str | None = None) -> None:
        """Initialize file operation error.

        Args:
            message: Error message
            file_path: Path to the problematic file
        """
        super().__init__(message, exit_code=EXIT_FAILURE)
        self.file_path = file_path
