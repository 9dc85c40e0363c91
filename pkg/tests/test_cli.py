import io
import json
import math

import pytest

from bisym.cli.commands import EXAMPLE_A0, EXAMPLE_B0
from bisym.cli.report import SAMPLE_COLUMNS
from tests.helpers import A0, B0, EXAMPLE

EXAMPLE_ARGS = [repr(v) for v in EXAMPLE]


def write_config(path, **overrides):
    values = {
        "tolerance": 1e-7,
        "count": 10,
        "seed": 42,
        "trace": '"zero"',
        "format": '"json"',
        "level": '"WARNING"',
    } | overrides
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        f"""
[verification]
tolerance = {values["tolerance"]}

[sampler]
count = {values["count"]}
seed = {values["seed"]}
trace = {values["trace"]}

[output]
format = {values["format"]}

[logging]
level = {values["level"]}
file = false
""",
        encoding="utf-8",
    )


def test_closed_forms_agree():
    assert EXAMPLE_A0 == A0
    assert EXAMPLE_B0 == B0


# check


def test_check_feasible(cli):
    result = cli("check", *EXAMPLE_ARGS)
    assert result.code == 0
    doc = json.loads(result.out)
    assert doc["verdict"] == "feasible"
    assert doc["case"] == "theorem2"
    assert doc["cube_sum"] == pytest.approx(0.18)


def test_check_accepts_any_order(cli):
    result = cli("check", "-0.8", "1", "0.2", "0.3", "-0.7")
    assert result.code == 0
    assert json.loads(result.out)["spectrum"] == [1.0, 0.3, 0.2, -0.7, -0.8]


def test_check_infeasible(cli):
    result = cli("check", "1", "0.8", "0.1", "-0.9", "-1")
    assert result.code == 1
    doc = json.loads(result.out)
    assert doc["verdict"] == "infeasible"
    assert doc["violated"] == "cube_sum"


def test_check_unknown(cli):
    result = cli("check", "1", "0.5", "0.45", "-0.6", "-1")
    assert result.code == 2
    assert json.loads(result.out)["verdict"] == "unknown"


def test_check_plain(cli):
    result = cli("check", "--format", "plain", *EXAMPLE_ARGS)
    assert result.code == 0
    assert "verdict: feasible" in result.out.splitlines()


def test_check_csv(cli):
    result = cli("check", "--format", "csv", *EXAMPLE_ARGS)
    header, row = result.out.splitlines()
    fields = dict(zip(header.split(","), row.split(","), strict=True))
    assert fields["verdict"] == "feasible"
    assert fields["conditions.cube_sum"] == "true"
    assert fields["spectrum.0"] == "1.0"


def test_format_from_configuration(cli, config_file):
    write_config(config_file, format='"plain"')
    result = cli("check", *EXAMPLE_ARGS)
    assert "case: theorem2" in result.out.splitlines()


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "1", "2", "3"],
        ["check", "1", "2", "3", "4", "5", "6"],
        ["check", "1", "0", "nan", "0", "0"],
        ["check", "1", "0", "x", "0", "0"],
        ["construct", "--tol", "0", *EXAMPLE_ARGS],
        ["sample", "--n", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(cli, argv):
    result = cli(*argv)
    assert result.code == 64
    assert "usage:" in result.err


def test_version(cli):
    result = cli("--version")
    assert result.code == 0
    assert result.out.startswith("bisym ")


# construct and verify


def test_construct_example(cli):
    result = cli("construct", *EXAMPLE_ARGS)
    assert result.code == 0
    doc = json.loads(result.out)
    assert doc["case"] == "theorem2"
    assert doc["matrix"][0][4] == pytest.approx(0.4)
    assert doc["residuals"]["max_eig_error"] <= 1e-8


def test_construct_infeasible(cli):
    result = cli("construct", "1", "0.9", "-0.5", "-0.6", "-0.8")
    assert result.code == 1
    doc = json.loads(result.out)
    assert doc["reason"] == "loewy_mcdonald"
    assert "matrix" not in doc


def test_construct_unknown(cli):
    result = cli("construct", "1", "0.5", "0.45", "-0.6", "-1")
    assert result.code == 2
    assert json.loads(result.out)["reason"] == "no construction applies"


def test_construct_then_verify(cli, monkeypatch):
    built = cli("construct", *EXAMPLE_ARGS)
    monkeypatch.setattr("sys.stdin", io.StringIO(built.out))

    result = cli("verify", *EXAMPLE_ARGS)
    assert result.code == 0
    doc = json.loads(result.out)
    assert doc["ok"] is True
    assert doc["bisymmetric"] is True
    assert doc["max_eig_error"] <= 1e-8


def test_verify_plain_matrix_file(cli, tmp_path):
    matrix = tmp_path / "identity.txt"
    matrix.write_text("\n".join(" ".join("1" if i == j else "0" for j in range(5)) for i in range(5)) + "\n")

    result = cli("verify", "--matrix", str(matrix), "1", "1", "1", "1", "0")
    assert result.code == 1
    doc = json.loads(result.out)
    assert doc["ok"] is False
    assert doc["bisymmetric"] is True
    assert doc["max_eig_error"] == pytest.approx(1.0)


def test_verify_not_symmetric(cli, tmp_path):
    matrix = tmp_path / "upper.csv"
    matrix.write_text("\n".join(",".join("1" if j >= i else "0" for j in range(5)) for i in range(5)))

    result = cli("verify", "--matrix", str(matrix), "1", "1", "1", "1", "1")
    assert result.code == 1
    doc = json.loads(result.out)
    assert doc["symmetric"] is False
    assert doc["spectrum_achieved"] is None


@pytest.mark.parametrize("content", ["1 2 3\n4 5 6\n", '{"rows": []}', "{not json", "1 0 0 0 0\n" * 4 + "1 0 0 0 inf\n"])
def test_verify_parse_errors(cli, tmp_path, content):
    matrix = tmp_path / "bad.txt"
    matrix.write_text(content)
    assert cli("verify", "--matrix", str(matrix), *EXAMPLE_ARGS).code == 65


def test_verify_missing_file(cli, tmp_path):
    assert cli("verify", "--matrix", str(tmp_path / "absent.txt"), *EXAMPLE_ARGS).code == 65


# sample


def test_sample_csv_is_deterministic(cli):
    first = cli("sample", "--n", "100", "--seed", "3")
    second = cli("sample", "--n", "100", "--seed", "3")
    assert first.code == second.code == 0
    assert first.out == second.out

    lines = first.out.splitlines()
    assert lines[0] == ",".join(SAMPLE_COLUMNS)
    assert len(lines) == 101

    summary = json.loads(first.err.strip().splitlines()[-1])
    assert summary["total"] == 100
    assert summary["verdicts"]["unknown"] == 0


def test_sample_include_example(cli):
    result = cli("sample", "--n", "3", "--seed", "1", "--include-example")
    row = result.out.splitlines()[1]
    assert row.startswith("0,1.0,0.3,0.2,-0.7,-0.8,feasible,theorem2,")


def test_sample_json(cli):
    result = cli("sample", "--n", "5", "--seed", "1", "--trace", "positive", "--format", "json")
    assert result.code == 0
    doc = json.loads(result.out)
    assert [r["seed_index"] for r in doc["records"]] == [1, 2, 3, 4, 5]
    assert all(r["l1"] == 1.0 for r in doc["records"])
    assert doc["summary"]["total"] == 5


def test_sample_defaults_from_configuration(cli, config_file):
    write_config(config_file, count=4, seed=11)
    from_config = cli("sample")
    explicit = cli("sample", "--n", "4", "--seed", "11")
    assert from_config.out == explicit.out
    assert len(from_config.out.splitlines()) == 5


def test_sample_bad_trace_in_configuration(cli, config_file):
    write_config(config_file, trace='"diagonal"')
    result = cli("sample")
    assert result.code == 64
    assert "diagonal" in result.err


# example


def test_example(cli):
    result = cli("example")
    assert result.code == 0
    doc = json.loads(result.out)
    assert doc["ok"] is True
    assert doc["a0"]["difference"] <= 1e-9
    assert doc["b0"]["difference"] <= 1e-9
    assert doc["radius_sq"] == pytest.approx(0.55)
    assert doc["case"] == "theorem2"
    assert doc["solution"]["a"] == doc["a0"]["solver"]
    assert abs(doc["solution"]["circle_residual"]) <= 1e-12
    assert abs(doc["solution"]["hyperbola_residual"]) <= 1e-12
    assert 0.0 < doc["solution"]["theta"] < math.pi / 2


def test_verbose_logs_to_stderr(cli):
    result = cli("-v", "check", *EXAMPLE_ARGS)
    assert result.code == 0
    assert "DEBUG bisym" in result.err
