"""
Command middleware implementations.
"""

import functools

import typer
from loguru import logger
from rich.console import Console

from fourierlcu.libs.utils.errors import FourierLcuError

console = Console()


def handle_errors(func):
    """Decorator turning library errors into a red message and exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except FourierLcuError as e:
            logger.debug(f"{e.name}: {e}")
            console.print(f"\n❌ [red]{e}[/red]\n")
            raise typer.Exit(1)

    return wrapper
