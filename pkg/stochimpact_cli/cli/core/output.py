"""Terminal output for the stochimpact commands.

Everything goes through ``typer.echo``; errors go to stderr, the rest to ``stream``.
"""

from __future__ import annotations

import math
import sys
from collections.abc import Mapping, Sequence
from typing import Any, TextIO

import typer

from stochimpact_cli.cli.constants import (
    EMOJI_ERROR,
    EMOJI_INFO,
    EMOJI_SPARKLE,
    EMOJI_SUCCESS,
    EMOJI_WARNING,
    Colors,
)


def format_cell(value: Any, digits: int = 6) -> str:
    """Render a table cell; floats get ``digits`` significant digits, None becomes ``-``."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.{digits}g}"
    return str(value)


def _is_numeric(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


class OutputFormatter:
    """Formats banners, status lines and tables for the CLI."""

    def __init__(self, stream: TextIO | None = None) -> None:
        """Initialize the output formatter.

        Args:
            stream: Output stream (defaults to stdout)
        """
        self.stream = stream or sys.stdout

    def _line(self, prefix: str, message: str, color: str, err: bool = False) -> None:
        formatted = Colors.colorize(f"{prefix}{message}", color)
        if err:
            typer.echo(f"\n{formatted}", err=True)
        else:
            typer.echo(f"\n{formatted}", file=self.stream)

    def print_banner(self, title: str, subtitle: str | None = None, color: str = "cyan") -> None:
        """Print a title line and an optional subtitle."""
        typer.echo("", file=self.stream)
        typer.echo(Colors.colorize(f"== {title} ==", color), file=self.stream)
        if subtitle:
            typer.echo(subtitle, file=self.stream)

    def success(self, message: str, emoji: bool = True) -> None:
        self._line(f"{EMOJI_SUCCESS}  " if emoji else "", message, "green")

    def error(self, message: str, emoji: bool = True) -> None:
        self._line(f"{EMOJI_ERROR}  " if emoji else "", message, "red", err=True)

    def info(self, message: str, emoji: bool = True) -> None:
        self._line(f"{EMOJI_INFO}  " if emoji else "", message, "blue")

    def warning(self, message: str, emoji: bool = True) -> None:
        self._line(f"{EMOJI_WARNING}  " if emoji else "", message, "yellow")

    def emphasize(self, message: str) -> None:
        typer.echo(f"\n{EMOJI_SPARKLE}  {message}", file=self.stream)

    def print_key_value_pairs(
        self,
        pairs: Mapping[str, Any],
        title: str | None = None,
        indent: int = 2,
    ) -> None:
        """Print aligned ``key: value`` lines.

        Args:
            pairs: Values to print, formatted with :func:`format_cell`
            title: Optional title for the section
            indent: Indentation level
        """
        if title:
            typer.echo(f"\n{title}:", file=self.stream)
        if not pairs:
            return
        width = max(len(key) for key in pairs)
        indent_str = " " * indent
        for key, value in pairs.items():
            typer.echo(f"{indent_str}{key.ljust(width)} : {format_cell(value)}", file=self.stream)

    def print_table(
        self,
        headers: Sequence[str],
        rows: Sequence[Sequence[Any]],
        title: str | None = None,
    ) -> None:
        """Print a table; numeric columns are right-aligned.

        Args:
            headers: Column headers
            rows: Rows of raw values, formatted with :func:`format_cell`
            title: Optional table title
        """
        if title:
            typer.echo(f"\n{title}:", file=self.stream)

        cells = [[format_cell(value) for value in row] for row in rows]
        widths = [len(header) for header in headers]
        for row in cells:
            for i, cell in enumerate(row[: len(headers)]):
                widths[i] = max(widths[i], len(cell))

        header_row = " | ".join(h.ljust(w) for h, w in zip(headers, widths))
        typer.echo(f"\n{header_row}", file=self.stream)
        typer.echo("-" * len(header_row), file=self.stream)
        for row in cells:
            padded = row + [""] * (len(headers) - len(row))
            typer.echo(
                " | ".join(
                    cell.rjust(w) if _is_numeric(cell) else cell.ljust(w)
                    for cell, w in zip(padded, widths)
                ),
                file=self.stream,
            )
