"""Command-line interface for bisym."""

from bisym.cli.app import run
from bisym.cli.commands import ExitCode

__all__ = ["ExitCode", "run"]
