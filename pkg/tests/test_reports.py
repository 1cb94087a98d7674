from __future__ import annotations

import csv
import io
import json

from cluster_complex.reports import (
	VerificationReport,
	VerifySummary,
	facet_record,
	graph_dot,
	graph_json,
	report_text,
	roots_jsonl,
	table_csv,
)


def test_record_and_absorb():
	report = VerificationReport(name="outer")
	assert report.record("a", True)
	assert report.ok
	assert not report.record("a", False, "broken")
	assert report.record("a", True)
	assert report.checks == {"a": False}
	assert report.failures == ["a: broken"]

	inner = VerificationReport(name="inner")
	inner.record("x", False, "bad x")
	outer = VerificationReport(name="wrapper")
	assert not outer.absorb(inner)
	assert outer.failures == ["inner: x: bad x"]
	assert not outer.ok


def test_summary_line_shows_headline_checks():
	reports = [VerificationReport(name=name) for name in ("ap1", "ap2", "ap4", "simplicial", "strong-flag", "endos", "descent", "faces")]
	summary = VerifySummary(algebra="G2", kind="finite", facets=8, reports=reports)
	assert summary.line() == "facets=8 ap1 ✓ ap2 ✓ ap4 ✓ strong-flag ✓ endos ✓ descent ✓"
	reports[-1].record("complete", False, "missing")
	assert summary.line().endswith("descent ✓ faces ✗")
	assert not summary.ok


def test_summary_line_without_headline_set():
	summary = VerifySummary(algebra="K", kind="rank2-infinite", facets=45, reports=[VerificationReport(name="window")])
	assert summary.line() == "facets=45 window ✓"
	assert json.loads(summary.model_dump_json())["ok"] is True


def test_roots_jsonl(g2):
	lines = roots_jsonl(g2.catalog)
	assert len(lines) == 6
	assert json.loads(lines[0]) == {"dimv": [0, 1], "q": 1, "component": None, "t": None, "i": None}


def test_window_roots_carry_ar_coordinates(kronecker):
	first = json.loads(roots_jsonl(kronecker.catalog)[0])
	assert first == {"dimv": [0, 1], "q": 1, "component": "preproj", "t": 0, "i": 2}


def test_table_csv(a2):
	rows = list(csv.reader(io.StringIO(table_csv(a2.oracle))))
	assert rows[0] == ["", "(0,1)", "(1,0)", "(1,1)"]
	assert rows[1] == ["(0,1)", "1/0", "0/0", "1/0"]
	assert rows[2] == ["(1,0)", "0/1", "1/0", "0/0"]
	assert rows[3] == ["(1,1)", "0/0", "1/0", "1/0"]


def test_facet_record(g2):
	facet = g2.tilting.facet_of(g2.ids((0, 1)))
	assert facet_record(g2.catalog, facet.members, facet.sigma) == {"T": [[0, 1]], "sigma": [1]}


def test_graph_exports(g2):
	graph = g2.complex.exchange_graph()
	dot = graph_dot(graph)
	assert dot.startswith("graph exchange {")
	assert dot.count(" -- ") == 8
	payload = json.loads(graph_json(graph))
	assert len(payload["nodes"]) == 8
	assert len(payload["edges"]) == 8
	assert "|1,2" in {node["label"] for node in payload["nodes"]}


def test_report_text():
	report = VerificationReport(name="demo")
	report.record("good", True)
	report.record("bad", False, "why")
	assert report_text(report).splitlines() == ["demo: FAILED", "  good ✓", "  bad ✗", "  ! bad: why"]
