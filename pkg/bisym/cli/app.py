"""Command dispatch and the exit-code contract."""

import logging
import sys
from collections.abc import Callable
from typing import Final, TextIO

from bisym.cli.commands import ExitCode, cmd_check, cmd_construct, cmd_example, cmd_sample, cmd_verify
from bisym.core.args import UsageError, parse_args
from bisym.core.config import Configuration, get_config
from bisym.core.errors import BisymError, MatrixParseError, SpectrumError, VerificationError
from bisym.core.log import setup_logging

_log = logging.getLogger("bisym.cli")

Command = Callable[..., ExitCode]

_COMMANDS: Final[dict[str, Command]] = {
    "check": cmd_check,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "example": cmd_example,
}


def _configure_logging(config: Configuration, verbose: bool) -> None:
    level = "DEBUG" if verbose else config.log_level
    try:
        setup_logging(level, config.log_to_file)
    except ValueError:
        setup_logging("WARNING", config.log_to_file)
        _log.warning("unknown log level %r in configuration, using WARNING", config.log_level)


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    """
    Run one bisym command.

    Args:
        argv: Command line without the program name; defaults to sys.argv[1:]
        out: Stream for reports; defaults to sys.stdout

    Returns:
        The process exit code
    """
    stream = out if out is not None else sys.stdout

    try:
        args = parse_args(argv)
    except UsageError as e:
        sys.stderr.write(e.usage)
        print(e, file=sys.stderr)
        return ExitCode.USAGE
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    try:
        config = get_config(args.config)
    except OSError as e:
        print(f"bisym: cannot use configuration {args.config}: {e}", file=sys.stderr)
        return ExitCode.USAGE

    _configure_logging(config, args.verbose)
    _log.debug("running %s", args.command)

    try:
        return int(_COMMANDS[args.command](args, config, stream))
    except SpectrumError as e:
        print(f"bisym: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except (MatrixParseError, OSError, UnicodeDecodeError) as e:
        print(f"bisym: cannot read matrix: {e}", file=sys.stderr)
        return ExitCode.PARSE
    except VerificationError as e:
        print(f"bisym: internal verification failure: {e}", file=sys.stderr)
        return ExitCode.SOFTWARE
    except BisymError as e:
        _log.exception("unexpected failure")
        print(f"bisym: {e}", file=sys.stderr)
        return ExitCode.SOFTWARE
