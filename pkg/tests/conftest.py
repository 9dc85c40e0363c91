from collections.abc import Callable
from dataclasses import dataclass
from io import StringIO
from pathlib import Path

import pytest

from bisym.cli.app import run
from bisym.core.spectrum import Spectrum, make_spectrum
from tests.helpers import EXAMPLE


@pytest.fixture
def example() -> Spectrum:
    return make_spectrum(EXAMPLE)


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    return tmp_path / "config" / "bisym.toml"


@dataclass
class CliResult:
    code: int
    out: str
    err: str


@pytest.fixture
def cli(config_file: Path, capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    """Run bisym with an isolated configuration file."""

    def invoke(*argv: str) -> CliResult:
        out = StringIO()
        code = run(["-c", str(config_file), *argv], out=out)
        captured = capsys.readouterr()
        return CliResult(code, out.getvalue() + captured.out, captured.err)

    return invoke
