"""Logging setup for the bisym logger hierarchy."""

import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path

from platformdirs import user_log_path

_log = logging.getLogger("bisym")
_log.propagate = False

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S"

_stream_handler: logging.Handler | None = None
_file_handler: logging.Handler | None = None


def _ensure_file_handler() -> None:
    """Install the rotating file handler on the bisym logger once."""
    global _file_handler

    if _file_handler is not None:
        return

    log_dir: Path = user_log_path("bisym", ensure_exists=True)
    timestamp = datetime.now().strftime("%Y-%m")
    log_file: Path = log_dir / f"bisym-{timestamp}.log"

    handler = RotatingFileHandler(
        log_file,
        maxBytes=4 * 1024 * 1024,  # 4 MiB
        backupCount=4,
        encoding="utf-8",
    )
    handler.setFormatter(logging.Formatter(_FORMAT, datefmt=_DATEFMT))
    handler.setLevel(logging.DEBUG)

    _log.addHandler(handler)
    _file_handler = handler


def setup_logging(level: str | int = logging.WARNING, to_file: bool = False) -> None:
    """
    Configure the bisym logger.

    The stderr handler is replaced on every call so it follows the current
    sys.stderr.

    Args:
        level: Level for stderr diagnostics
        to_file: Also write DEBUG records to a rotating file in the user log directory
    """
    global _stream_handler

    if _stream_handler is not None:
        _log.removeHandler(_stream_handler)

    stream = logging.StreamHandler(sys.stderr)
    stream.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    stream.setLevel(level)
    _log.addHandler(stream)
    _stream_handler = stream

    if to_file:
        _ensure_file_handler()
        _log.setLevel(logging.DEBUG)
    else:
        _log.setLevel(level)
