from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from cluster_complex.cli import (
	EXIT_OK,
	EXIT_OTHER_ERROR,
	EXIT_PARSE_ERROR,
	EXIT_UNSUPPORTED,
	EXIT_VERIFICATION_FAILED,
	app,
	run,
)
from cluster_complex.config import RunConfig

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def runner() -> CliRunner:
	return CliRunner(mix_stderr=False)


def test_verify_g2_file(runner):
	result = runner.invoke(app, ["verify", str(DATA / "g2.json")])
	assert result.exit_code == EXIT_OK, result.stderr
	assert result.stdout.splitlines()[0] == "facets=8 ap1 ✓ ap2 ✓ ap4 ✓ strong-flag ✓ endos ✓ descent ✓"


def test_verify_input_option_and_json(runner):
	result = runner.invoke(app, ["verify", "--input", str(DATA / "g2.json"), "--format", "json"])
	assert result.exit_code == EXIT_OK
	payload = json.loads(result.stdout)
	assert payload["ok"] is True
	assert payload["facets"] == 8


def test_verify_affine_is_unsupported(runner):
	result = runner.invoke(app, ["verify", str(DATA / "affine-a2.json")])
	assert result.exit_code == EXIT_UNSUPPORTED


def test_verify_kronecker_window(runner):
	result = runner.invoke(app, ["verify", "--fixture", "Kronecker", "--t-max", "4"])
	assert result.exit_code == EXIT_OK
	assert result.stdout.strip() == "facets=21 window ✓ rank2-corollary ✓"


def test_bad_inputs(runner, tmp_path):
	broken = tmp_path / "broken.json"
	broken.write_text("{not json", encoding="utf-8")
	assert runner.invoke(app, ["verify", str(broken)]).exit_code == EXIT_PARSE_ERROR
	assert runner.invoke(app, ["verify", str(tmp_path / "missing.json")]).exit_code == EXIT_PARSE_ERROR
	assert runner.invoke(app, ["verify", "--fixture", "E9"]).exit_code == EXIT_PARSE_ERROR
	assert runner.invoke(app, ["verify", str(DATA / "g2.json"), "--fixture", "G2"]).exit_code == EXIT_PARSE_ERROR
	assert runner.invoke(app, ["verify"]).exit_code == EXIT_PARSE_ERROR
	assert runner.invoke(app, ["roots", "--fixture", "G2", "--format", "xml"]).exit_code == EXIT_PARSE_ERROR


def test_g2_demo(runner):
	result = runner.invoke(app, ["g2-demo"])
	assert result.exit_code == EXIT_OK, result.stdout
	lines = result.stdout.splitlines()
	assert lines[0].split()[2:] == ["(0,1)", "(1,3)", "(1,2)", "(2,3)", "(1,1)", "(1,0)"]
	assert lines[1].split()[1:] == ["1", "6", "5", "9", "4", "3"]
	assert lines[2].split()[1:] == ["1", "12", "25", "27", "16", "3"]
	assert lines[3] == "complements of (1,2): (1,3) (2,3)"
	assert "✗" in lines[6]


def test_g2_demo_json(runner):
	result = runner.invoke(app, ["g2-demo", "--format", "json"])
	payload = json.loads(result.stdout)
	assert payload["lengths"] == [1, 6, 5, 9, 4, 3]
	assert payload["bongartz"] == [1, 3]
	assert payload["dual_bongartz"] == [2, 3]
	assert payload["corollary_ok"] and not payload["unit_endomorphisms_ok"]


def test_roots_json(runner):
	result = runner.invoke(app, ["roots", "--fixture", "G2", "--format", "json"])
	assert result.exit_code == EXIT_OK
	records = [json.loads(line) for line in result.stdout.splitlines()]
	assert len(records) == 6
	assert records[0] == {"dimv": [0, 1], "q": 1, "component": None, "t": None, "i": None}


def test_facets_of_a2(runner):
	result = runner.invoke(app, ["facets", "--fixture", "A2"])
	assert result.exit_code == EXIT_OK
	lines = result.stdout.splitlines()
	assert lines[-1] == "facets=5"
	assert len(lines) == 6


def test_graph_dot(runner):
	result = runner.invoke(app, ["graph", "--fixture", "G2"])
	assert result.exit_code == EXIT_OK
	assert result.stdout.startswith("graph exchange {")


def test_table_csv(runner):
	result = runner.invoke(app, ["table", "--fixture", "A2"])
	assert result.exit_code == EXIT_OK
	rows = list(csv.reader(io.StringIO(result.stdout)))
	assert rows[0] == ["", "(0,1)", "(1,0)", "(1,1)"]
	assert [row[1:] for row in rows[1:]] == [["1/0", "0/0", "1/0"], ["0/1", "1/0", "0/0"], ["0/0", "1/0", "1/0"]]


def test_descent(runner):
	result = runner.invoke(app, ["descent", "--fixture", "G2"])
	assert result.exit_code == EXIT_OK
	lines = result.stdout.splitlines()
	assert len(lines) == 8
	assert all(line.rstrip().endswith("|1,2") for line in lines)
	assert runner.invoke(app, ["descent", "--fixture", "Kronecker"]).exit_code == EXIT_OTHER_ERROR


def test_total_order(runner):
	ok = runner.invoke(app, ["total-order", "--r", "2", "--s", "2", "--u", "1", "--v", "1", "--t-max", "10"])
	assert ok.exit_code == EXIT_OK
	finite = runner.invoke(app, ["total-order", "--r", "1", "--s", "3", "--u", "3", "--v", "1"])
	assert finite.exit_code == EXIT_OTHER_ERROR
	partial = runner.invoke(app, ["total-order", "--r", "2"])
	assert partial.exit_code == EXIT_PARSE_ERROR


def test_run_returns_exit_codes():
	assert run(RunConfig(subcommand="verify", fixture="A2")) == EXIT_OK
	assert run(RunConfig(subcommand="verify", fixture="affine-A2")) == EXIT_UNSUPPORTED
	assert EXIT_VERIFICATION_FAILED == 1
