"""Rich-based console output for the estimation CLI and study runner."""

import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
)
from rich.table import Table

# stdout is reserved for CSV/JSON emitted by the CLI
console = Console(stderr=True)


class StudyLogger:
    """Console logger with short status glyphs and study tables."""

    def __init__(self, console: Console = console):
        self.console = console

    def info(self, message: str, **kwargs: Any) -> None:
        """Print info message."""
        self.console.print(f"[green]•[/green] {message}", **kwargs)

    def success(self, message: str, **kwargs: Any) -> None:
        """Print success message."""
        if message.startswith("✓"):
            self.console.print(f"[bold green]{message}[/bold green]", **kwargs)
        else:
            self.console.print(f"[bold green]✓[/bold green] {message}", **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        """Print warning message."""
        self.console.print(f"[yellow]![/yellow] {message}", **kwargs)

    def error(self, message: str, **kwargs: Any) -> None:
        """Print error message."""
        self.console.print(f"[red]✗[/red] {message}", **kwargs)

    def section(self, title: str, content: str = "", **kwargs: Any) -> None:
        """Print a section header."""
        self.console.print(f"\n[bold blue]{title}[/bold blue]", **kwargs)
        if content:
            self.console.print(content)

    def table(self, title: str, rows: list, columns: list) -> None:
        """Print rows (sequences aligned with ``columns``) as a table."""
        table = Table(title=title, show_header=True, header_style="bold magenta")
        for column in columns:
            table.add_column(str(column), style="cyan", justify="right")
        for row in rows:
            table.add_row(*[_format_cell(value) for value in row])
        self.console.print(table)

    def stats(self, stats: Dict[str, Any]) -> None:
        """Print statistics in a nice format."""
        self.console.print("\n[bold blue]Statistics:[/bold blue]")

        for key, value in stats.items():
            self.console.print(f"  {key}: [bold green]{_format_cell(value)}[/bold green]")

    @contextmanager
    def progress(
        self, description: str, total: Optional[int] = None, disable: bool = False
    ) -> Iterator[Any]:
        """Context manager yielding ``(progress, task_id)``."""
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            console=self.console,
            disable=disable,
        ) as progress:
            task = progress.add_task(description, total=total)
            yield progress, task


def _format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return f"{value:,}"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


# Global logger instance
logger = StudyLogger()


def setup_rich_logging(level: str = "INFO") -> None:
    """Route the ``logging`` tree through rich on stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
        force=True,
    )


# Convenience functions
def info(message: str, **kwargs: Any) -> None:
    logger.info(message, **kwargs)


def success(message: str, **kwargs: Any) -> None:
    logger.success(message, **kwargs)


def warning(message: str, **kwargs: Any) -> None:
    logger.warning(message, **kwargs)


def error(message: str, **kwargs: Any) -> None:
    logger.error(message, **kwargs)


def section(title: str, content: str = "", **kwargs: Any) -> None:
    logger.section(title, content, **kwargs)


def stats(stats: Dict[str, Any]) -> None:
    logger.stats(stats)


def table(title: str, rows: list, columns: list) -> None:
    logger.table(title, rows, columns)


@contextmanager
def progress(
    description: str, total: Optional[int] = None, disable: bool = False
) -> Iterator[Any]:
    """Progress bar context manager."""
    with logger.progress(description, total, disable) as handle:
        yield handle

