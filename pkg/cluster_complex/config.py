from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from cluster_complex.algebra import AlgebraData, ClusterComplexError, build_algebra


class ParseError(ClusterComplexError):
	pass


class Settings(BaseSettings):
	log_level: str = Field(default="INFO")

	# Catalogs
	t_max: int = Field(default=10, description="Window cutoff for rank-2 representation-infinite algebras")
	root_safety_bound: int = Field(default=1_000_000, description="Abort root generation beyond this many vectors")

	# Verification
	flag_bfs_max_rank: int = Field(default=3, description="Run the literal flag BFS only up to this rank")
	multiplicity_bound: int = Field(default=2, description="Multiplicities tried by the rigid dimension vector check")
	seed: int = Field(default=0)
	random_weight_count: int = Field(default=5, description="Random additive functions per total-order case")
	total_order_t_max: int = Field(default=30)

	model_config = SettingsConfigDict(
		env_file=".env",
		env_file_encoding="utf-8",
		env_prefix="CLUSTER_",
		case_sensitive=False,
		extra="ignore",
	)

	@model_validator(mode="after")
	def _normalize(self) -> "Settings":
		self.log_level = self.log_level.strip().upper()
		for name in ("t_max", "root_safety_bound", "flag_bfs_max_rank", "multiplicity_bound", "random_weight_count", "total_order_t_max"):
			if getattr(self, name) < 0:
				raise ValueError(f"{name} must be non-negative")
		return self


@lru_cache(maxsize=1)
def get_settings() -> Settings:
	return Settings()  # type: ignore[call-arg]


class AlgebraSpec(BaseModel):
	"""JSON algebra input, vertices 1-based."""

	n: int = Field(ge=1)
	cartan: list[list[int]]
	symmetrizer: list[int]
	arrows: list[tuple[int, int]] = Field(default_factory=list)
	name: str = ""

	@model_validator(mode="after")
	def _check_shape(self) -> "AlgebraSpec":
		if len(self.symmetrizer) != self.n or len(self.cartan) != self.n or any(len(row) != self.n for row in self.cartan):
			raise ValueError(f"cartan must be {self.n}x{self.n} and symmetrizer must have {self.n} entries")
		return self

	def build(self) -> AlgebraData:
		return build_algebra(self.cartan, self.symmetrizer, self.arrows, name=self.name)


def load_algebra_spec(path: str | Path) -> AlgebraSpec:
	source = Path(path)
	try:
		payload = json.loads(source.read_text(encoding="utf-8"))
		spec = AlgebraSpec.model_validate(payload)
	except (OSError, json.JSONDecodeError, ValidationError) as exc:
		raise ParseError(f"Cannot read algebra from {source}: {exc}") from exc
	if not spec.name:
		spec.name = source.stem
	return spec


Subcommand = Literal["roots", "table", "facets", "verify", "graph", "descent", "total-order", "g2-demo"]
OutputFormat = Literal["text", "json", "dot", "csv"]


class RunConfig(BaseModel):
	subcommand: Subcommand
	input_path: Path | None = None
	fixture: str | None = None
	t_max: int = Field(default=10, ge=0)
	output_format: OutputFormat = "text"
	seed: int = 0
	# total-order parameters
	r: int | None = None
	s: int | None = None
	u: int | None = None
	v: int | None = None
	weights: list[int] | None = None
	verbose: bool = False

	@model_validator(mode="after")
	def _check_input(self) -> "RunConfig":
		if self.input_path is not None and self.fixture is not None:
			raise ValueError("Give either an input file or a fixture, not both")
		return self
