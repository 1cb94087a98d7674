"""Verification report models and the text/JSON/CSV/DOT renderers used by the CLI."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Any, Iterable

import pandas as pd
from pydantic import BaseModel, Field, computed_field

if TYPE_CHECKING:
	import networkx as nx

	from cluster_complex.homext import HomExtOracle
	from cluster_complex.roots import RootCatalog

PASS_MARK = "✓"
FAIL_MARK = "✗"


class VerificationReport(BaseModel):
	"""Outcome of a verification: named boolean checks plus human-readable failures.

	A report never raises on a failed property; callers inspect `ok`.
	"""

	name: str
	checks: dict[str, bool] = Field(default_factory=dict)
	failures: list[str] = Field(default_factory=list)
	details: dict[str, Any] = Field(default_factory=dict)

	@computed_field  # type: ignore[prop-decorator]
	@property
	def ok(self) -> bool:
		return not self.failures and all(self.checks.values())

	def record(self, check: str, passed: bool, failure: str | None = None) -> bool:
		self.checks[check] = self.checks.get(check, True) and passed
		if not passed:
			self.failures.append(f"{check}: {failure}" if failure else check)
		return passed

	def absorb(self, other: VerificationReport, check: str | None = None) -> bool:
		"""Fold another report in as a single check."""
		key = check or other.name
		self.checks[key] = self.checks.get(key, True) and other.ok
		self.failures.extend(f"{key}: {f}" for f in other.failures)
		return other.ok


class CofaceProfile(BaseModel):
	face: list[int]
	rank: int
	facet_count: int
	polygon: str | None = None
	is_cycle: bool | None = None


HEADLINE = ("ap1", "ap2", "ap4", "strong-flag", "endos", "descent")


class VerifySummary(BaseModel):
	algebra: str
	kind: str
	facets: int
	reports: list[VerificationReport] = Field(default_factory=list)
	details: dict[str, Any] = Field(default_factory=dict)

	@computed_field  # type: ignore[prop-decorator]
	@property
	def ok(self) -> bool:
		return all(r.ok for r in self.reports)

	def line(self) -> str:
		"""One grep-able line: the headline checks, then anything else only if it failed."""
		names = [r.name for r in self.reports]
		shown = [r for r in self.reports if r.name in HEADLINE] if set(HEADLINE) <= set(names) else list(self.reports)
		shown += [r for r in self.reports if r not in shown and not r.ok]
		marks = " ".join(f"{r.name} {PASS_MARK if r.ok else FAIL_MARK}" for r in shown)
		return f"facets={self.facets} {marks}"


def format_vector(values: Iterable[int]) -> str:
	return "(" + ",".join(str(v) for v in values) + ")"


def roots_jsonl(catalog: RootCatalog) -> list[str]:
	lines = []
	for x in catalog:
		record = {
			"dimv": list(x.dimv),
			"q": x.q,
			"component": x.component.value if x.component else None,
			"t": x.t,
			"i": x.vertex,
		}
		lines.append(json.dumps(record))
	return lines


def table_csv(oracle: HomExtOracle) -> str:
	labels = [x.label() for x in oracle.catalog]
	cells = [[f"{entry.hom}/{entry.ext}" for entry in row] for row in oracle.table()]
	frame = pd.DataFrame(cells, index=labels, columns=labels)
	return frame.to_csv()


def facet_record(catalog: RootCatalog, members: Iterable[int], sigma: Iterable[int]) -> dict[str, Any]:
	return {"T": [list(catalog[k].dimv) for k in members], "sigma": sorted(sigma)}


def graph_dot(graph: nx.Graph, name: str = "exchange") -> str:
	lines = [f"graph {name} {{"]
	index = {node: k for k, node in enumerate(graph.nodes)}
	for node, data in graph.nodes(data=True):
		lines.append(f'  n{index[node]} [label="{data.get("label", node)}"];')
	for left, right in graph.edges:
		lines.append(f"  n{index[left]} -- n{index[right]};")
	lines.append("}")
	return "\n".join(lines)


def graph_json(graph: nx.Graph) -> str:
	index = {node: k for k, node in enumerate(graph.nodes)}
	payload = {
		"nodes": [{"id": index[node], "label": data.get("label", "")} for node, data in graph.nodes(data=True)],
		"edges": [[index[left], index[right]] for left, right in graph.edges],
	}
	return json.dumps(payload, indent=2)


def report_text(report: VerificationReport) -> str:
	lines = [f"{report.name}: {'ok' if report.ok else 'FAILED'}"]
	for check, passed in report.checks.items():
		lines.append(f"  {check} {PASS_MARK if passed else FAIL_MARK}")
	for failure in report.failures:
		lines.append(f"  ! {failure}")
	return "\n".join(lines)
