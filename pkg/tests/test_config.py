from __future__ import annotations

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from cluster_complex.algebra import NotSymmetrizable
from cluster_complex.config import AlgebraSpec, ParseError, RunConfig, Settings, load_algebra_spec

DATA = Path(__file__).resolve().parent.parent / "data"


def test_settings_defaults(monkeypatch):
	for name in ("CLUSTER_T_MAX", "CLUSTER_LOG_LEVEL", "CLUSTER_SEED"):
		monkeypatch.delenv(name, raising=False)
	settings = Settings(_env_file=None)
	assert settings.t_max == 10
	assert settings.flag_bfs_max_rank == 3
	assert settings.total_order_t_max == 30
	assert settings.log_level == "INFO"


def test_settings_from_environment(monkeypatch):
	monkeypatch.setenv("CLUSTER_T_MAX", "4")
	monkeypatch.setenv("CLUSTER_LOG_LEVEL", " debug ")
	settings = Settings(_env_file=None)
	assert settings.t_max == 4
	assert settings.log_level == "DEBUG"


def test_settings_reject_negative_bounds(monkeypatch):
	monkeypatch.setenv("CLUSTER_MULTIPLICITY_BOUND", "-1")
	with pytest.raises(ValidationError):
		Settings(_env_file=None)


def test_load_bundled_files():
	spec = load_algebra_spec(DATA / "g2.json")
	assert spec.name == "G2"
	algebra = spec.build()
	assert algebra.euler == ((3, -3), (0, 1))
	assert load_algebra_spec(DATA / "kronecker.json").build().n == 2


def test_name_defaults_to_file_stem(tmp_path):
	path = tmp_path / "my-a2.json"
	path.write_text(json.dumps({"n": 2, "cartan": [[2, -1], [-1, 2]], "symmetrizer": [1, 1], "arrows": [[2, 1]]}))
	spec = load_algebra_spec(path)
	assert spec.name == "my-a2"
	assert spec.build().arrows == frozenset({(2, 1)})


@pytest.mark.parametrize(
	"content",
	[
		"{not json",
		json.dumps({"n": 2, "cartan": [[2]], "symmetrizer": [1, 1]}),
		json.dumps({"n": 0, "cartan": [], "symmetrizer": []}),
		json.dumps({"cartan": [[2]], "symmetrizer": [1]}),
	],
)
def test_parse_errors(tmp_path, content):
	path = tmp_path / "bad.json"
	path.write_text(content)
	with pytest.raises(ParseError):
		load_algebra_spec(path)


def test_missing_file_is_a_parse_error(tmp_path):
	with pytest.raises(ParseError):
		load_algebra_spec(tmp_path / "absent.json")


def test_invalid_cartan_data_is_not_a_parse_error():
	spec = AlgebraSpec(n=2, cartan=[[2, -1], [-2, 2]], symmetrizer=[1, 1], arrows=[(1, 2)])
	with pytest.raises(NotSymmetrizable):
		spec.build()


def test_run_config_validation():
	assert RunConfig(subcommand="verify", fixture="G2").t_max == 10
	with pytest.raises(ValidationError):
		RunConfig(subcommand="verify", t_max=-1)
	with pytest.raises(ValidationError):
		RunConfig(subcommand="explore")
	with pytest.raises(ValidationError):
		RunConfig(subcommand="verify", fixture="G2", input_path=Path("g2.json"))
	with pytest.raises(ValidationError):
		RunConfig(subcommand="verify", output_format="xml")
