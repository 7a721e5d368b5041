"""Tests for the qcalc command line"""

import csv
import io
import json

import pytest
from click.testing import CliRunner

from src.cli.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli, parse_range


@pytest.fixture
def runner():
    return CliRunner()


def _json_lines(output: str):
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


def test_verify_prints_one_record_per_identity(runner):
    result = runner.invoke(cli, ["verify", "eq12", "eq3", "--trunc", "6"])
    assert result.exit_code == EXIT_OK, result.output
    records = _json_lines(result.output)
    assert [r["id"] for r in records] == ["eq3", "eq12"]
    assert all(r["status"] == "pass" for r in records)
    assert records[0]["mode"] == "exact"


def test_verify_csv_output_to_file(runner, tmp_path):
    target = tmp_path / "report.csv"
    result = runner.invoke(cli, ["verify", "eq14n", "--q", "0.5", "--format", "csv", "--out", str(target)])
    assert result.exit_code == EXIT_OK, result.output
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert rows[0]["id"] == "eq14n"
    assert rows[0]["status"] == "pass"
    assert rows[0]["q"] == "0.5"


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "bogus"],
        ["verify", "eq12", "--q", "1.5"],
        ["verify", "eq12", "--trunc", "3"],
        ["verify", "eq12", "--gamma", "0"],
        ["verify"],
        ["eval", "bq"],
        ["table", "moments-III"],
        ["table", "moments-II", "--q", "exact"],
    ],
)
def test_usage_errors_exit_with_two(runner, args):
    assert runner.invoke(cli, args).exit_code == EXIT_USAGE


def test_list_shows_registered_ids(runner):
    result = runner.invoke(cli, ["verify", "--list", "--prefix", "eq1", "--format", "csv"])
    assert result.exit_code == EXIT_OK
    lines = result.output.splitlines()
    assert lines[0] == "id,kind,anchor,contract"
    assert all(line.startswith("eq1") for line in lines[1:])


def test_eval_exact_hermite(runner):
    result = runner.invoke(cli, ["eval", "hermite1", "3"])
    assert result.exit_code == EXIT_OK
    assert "x^3" in result.output


def test_eval_numeric_values(runner):
    result = runner.invoke(cli, ["eval", "eq", "0", "--q", "0.5"])
    assert result.exit_code == EXIT_OK
    assert result.output.strip() == "1"
    result = runner.invoke(cli, ["eval", "bq", "--q", "0.5"])
    assert result.exit_code == EXIT_OK
    assert float(result.output.strip()) > 0


def test_eval_exact_series_text(runner):
    result = runner.invoke(cli, ["eval", "eq", "--trunc", "4"])
    assert result.exit_code == EXIT_OK
    assert result.output.strip().endswith("O(z^5)")


def test_eval_pole_exits_with_one(runner):
    result = runner.invoke(cli, ["eval", "eq", "4", "--q", "0.5"])
    assert result.exit_code == EXIT_FAILED


def test_table_of_moments(runner):
    result = runner.invoke(cli, ["table", "moments-II", "0..4", "--q", "0.5"])
    assert result.exit_code == EXIT_OK, result.output
    lines = result.output.splitlines()
    assert lines[0] == "m,computed,closed_form,deviation"
    assert len(lines) == 6


def test_orthogonality_table_sizes(runner):
    empty = runner.invoke(cli, ["table", "orthogonality", "0..-1", "--q", "0.5"])
    assert empty.output.splitlines() == ["family,m,n,computed,closed_form,deviation"]
    full = runner.invoke(cli, ["table", "orthogonality", "0..3", "--q", "0.5"])
    assert len(full.output.splitlines()) == 1 + 16


def test_parse_range():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("3") == [3]
    assert parse_range("4..1") == []


def test_table_runs_at_the_default_numeric_q(runner):
    result = runner.invoke(cli, ["table", "moments-II", "0..2"])
    assert result.exit_code == EXIT_OK, result.output
    assert result.output.splitlines()[0] == "m,computed,closed_form,deviation"


@pytest.mark.slow
def test_verify_all_exact_passes(runner):
    result = runner.invoke(cli, ["verify", "--all", "--q", "exact", "--trunc", "12"])
    assert result.exit_code == EXIT_OK, result.output
    records = _json_lines(result.output)
    assert records
    assert all(r["status"] == "pass" for r in records)
