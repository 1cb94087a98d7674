from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Annotated, Optional

import typer
from pydantic import ValidationError

from cluster_complex.algebra import ClusterComplexError, length
from cluster_complex.config import ParseError, RunConfig, Settings, get_settings
from cluster_complex.fixtures import get_fixture
from cluster_complex.measure import (
	descent_step,
	lambda_vector,
	mu,
	verify_rank2_corollary,
	verify_total_order,
	verify_total_order_sweep,
)
from cluster_complex.reports import (
	FAIL_MARK,
	PASS_MARK,
	facet_record,
	graph_dot,
	graph_json,
	report_text,
	roots_jsonl,
	table_csv,
)
from cluster_complex.roots import CatalogKind, NotFiniteType, UnsupportedAlgebra, rank2_sequences
from cluster_complex.service import ClusterComplexService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_UNSUPPORTED = 3
EXIT_OTHER_ERROR = 4

app = typer.Typer(
	help="Cluster complexes of hereditary artin algebras given by symmetrizable Cartan data.",
	no_args_is_help=True,
	add_completion=False,
)

InputArg = Annotated[Optional[Path], typer.Argument(help="JSON algebra file (n, cartan, symmetrizer, arrows)")]
InputOpt = Annotated[Optional[Path], typer.Option("--input", "-i", help="JSON algebra file, as an option")]
FixtureOpt = Annotated[Optional[str], typer.Option("--fixture", "-f", help="Bundled algebra instead of a file, e.g. G2")]
TMaxOpt = Annotated[Optional[int], typer.Option("--t-max", help="AR window cutoff for rank-2 infinite algebras")]
FormatOpt = Annotated[str, typer.Option("--format", help="text | json | dot | csv")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Seed for randomized sampling")]
VerboseOpt = Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging and per-check report output")]


def _configure_logging(settings: Settings, verbose: bool) -> None:
	logging.basicConfig(
		level=logging.DEBUG if verbose else settings.log_level,
		format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
		stream=sys.stderr,
	)


def _service(config: RunConfig, settings: Settings) -> ClusterComplexService:
	if config.input_path is not None:
		return ClusterComplexService.from_file(config.input_path, settings, t_max=config.t_max)
	if config.fixture is not None:
		try:
			return ClusterComplexService.from_fixture(config.fixture, settings, t_max=config.t_max)
		except KeyError as exc:
			raise ParseError(str(exc.args[0])) from exc
	raise ParseError("Give an algebra file or --fixture")


def _emit(lines: list[str] | str) -> None:
	typer.echo(lines if isinstance(lines, str) else "\n".join(lines))


def _roots(config: RunConfig, settings: Settings) -> int:
	catalog = _service(config, settings).catalog
	if config.output_format == "json":
		_emit(roots_jsonl(catalog))
		return EXIT_OK
	lines = []
	for x in catalog:
		position = f" {x.component.value} t={x.t} i={x.vertex}" if x.component else ""
		lines.append(f"{x.id:>3} {x.label()} q={x.q}{position}")
	_emit(lines)
	return EXIT_OK


def _table(config: RunConfig, settings: Settings) -> int:
	oracle = _service(config, settings).oracle
	if config.output_format == "json":
		rows = oracle.table()
		payload = {
			"modules": [x.label() for x in oracle.catalog],
			"hom": [[e.hom for e in row] for row in rows],
			"ext": [[e.ext for e in row] for row in rows],
		}
		_emit(json.dumps(payload))
		return EXIT_OK
	_emit(table_csv(oracle).rstrip("\n"))
	return EXIT_OK


def _facets(config: RunConfig, settings: Settings) -> int:
	service = _service(config, settings)
	complex_ = service.complex if service.kind is CatalogKind.FINITE else service.window.cluster
	if config.output_format == "json":
		_emit([json.dumps(facet_record(complex_.catalog, f.members, f.sigma)) for f in complex_.facets])
		return EXIT_OK
	lines = [complex_.label(complex_.key(f)) for f in complex_.facets]
	lines.append(f"facets={len(complex_.facets)}")
	_emit(lines)
	return EXIT_OK


def _verify(config: RunConfig, settings: Settings) -> int:
	summary = _service(config, settings).verify()
	if config.output_format == "json":
		_emit(summary.model_dump_json(indent=2))
	else:
		lines = [summary.line()]
		if config.verbose:
			lines += [report_text(r) for r in summary.reports]
		_emit(lines)
	if not summary.ok:
		logger.error(f"Verification failed: {[f for r in summary.reports for f in r.failures][:5]}")
		return EXIT_VERIFICATION_FAILED
	return EXIT_OK


def _graph(config: RunConfig, settings: Settings) -> int:
	graph = _service(config, settings).exchange_graph()
	_emit(graph_json(graph) if config.output_format == "json" else graph_dot(graph))
	return EXIT_OK


def _descent(config: RunConfig, settings: Settings) -> int:
	service = _service(config, settings)
	if service.kind is not CatalogKind.FINITE:
		raise NotFiniteType(f"descent walks the full complex; {service.algebra!r} is {service.kind.value}")
	complex_ = service.complex
	records = []
	for facet in complex_.facets:
		path = [facet]
		while not path[-1].is_zero:
			path.append(descent_step(service.tilting, path[-1]))
		records.append(
			{
				"facet": complex_.label(complex_.key(facet)),
				"path": [complex_.label(complex_.key(f)) for f in path],
				"lambda_squared": [[str(v) for v in lambda_vector(complex_.catalog, f).squares()] for f in path],
			}
		)
	if config.output_format == "json":
		_emit([json.dumps(r) for r in records])
	else:
		_emit([f"{len(r['path']) - 1}: " + " -> ".join(r["path"]) for r in records])
	return EXIT_OK


def _total_order(config: RunConfig, settings: Settings) -> int:
	params = (config.r, config.s, config.u, config.v)
	if all(p is None for p in params):
		report = verify_total_order_sweep(
			t_max=config.t_max,
			random_weights=settings.random_weight_count,
			seed=config.seed,
		)
	elif any(p is None for p in params):
		raise ParseError("total-order needs all of --r, --s, --u, --v (or none for the sweep)")
	else:
		try:
			report = verify_total_order(config.r, config.s, config.u, config.v, config.t_max, config.weights)
		except ValueError as exc:
			raise ParseError(str(exc)) from exc
	_emit(report.model_dump_json(indent=2) if config.output_format == "json" else report_text(report))
	return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED


def _g2_demo(config: RunConfig, settings: Settings) -> int:
	service = ClusterComplexService(get_fixture("G2"), settings, t_max=config.t_max)
	algebra = service.algebra
	ar_order = list(rank2_sequences(algebra, config.t_max))
	lengths = [length(algebra, x.dimv) for x in ar_order]
	squares = [mu(algebra, x).squared for x in ar_order]

	calculator = service.tilting
	center = service.catalog.find((1, 2))
	complements = [service.catalog[k] for k in calculator.complements([center.id], algebra.vertices)]
	(bongartz,) = (service.catalog[k] for k in calculator.bongartz([center.id]))
	(dual,) = (service.catalog[k] for k in calculator.dual_bongartz([center.id]))

	corollary = verify_rank2_corollary(algebra, config.t_max, only=[center.dimv])
	control = verify_rank2_corollary(algebra, config.t_max, unit_endomorphisms=True, only=[center.dimv])
	summary = service.verify()

	if config.output_format == "json":
		payload = {
			"ar_order": [list(x.dimv) for x in ar_order],
			"lengths": lengths,
			"mu_squared": [str(v) for v in squares],
			"complements": [list(x.dimv) for x in complements],
			"bongartz": list(bongartz.dimv),
			"dual_bongartz": list(dual.dimv),
			"corollary_ok": corollary.ok,
			"unit_endomorphisms_ok": control.ok,
			"verify": summary.line(),
		}
		_emit(json.dumps(payload))
	else:
		_emit(
			[
				"AR order:    " + " ".join(x.label() for x in ar_order),
				"lengths:     " + " ".join(str(v) for v in lengths),
				"mu^2:        " + " ".join(str(v) for v in squares),
				f"complements of {center.label()}: " + " ".join(x.label() for x in complements),
				f"bongartz {bongartz.label()}  dual bongartz {dual.label()}",
				f"corollary at {center.label()} {PASS_MARK if corollary.ok else FAIL_MARK}",
				f"with unit endomorphisms {PASS_MARK if control.ok else FAIL_MARK} (both neighbours are longer)",
				summary.line(),
			]
		)
	# The unit-endomorphism control is expected to fail.
	return EXIT_OK if corollary.ok and not control.ok and summary.ok else EXIT_VERIFICATION_FAILED


HANDLERS = {
	"roots": _roots,
	"table": _table,
	"facets": _facets,
	"verify": _verify,
	"graph": _graph,
	"descent": _descent,
	"total-order": _total_order,
	"g2-demo": _g2_demo,
}


def run(config: RunConfig, settings: Settings | None = None) -> int:
	"""Dispatch one subcommand and map library errors to exit codes."""
	settings = settings or get_settings()
	try:
		return HANDLERS[config.subcommand](config, settings)
	except ParseError as exc:
		logger.error(f"Parse error: {exc}")
		return EXIT_PARSE_ERROR
	except UnsupportedAlgebra as exc:
		logger.error(f"Unsupported algebra: {exc}")
		return EXIT_UNSUPPORTED
	except ClusterComplexError as exc:
		logger.error(f"{type(exc).__name__}: {exc}")
		return EXIT_OTHER_ERROR


def _invoke(subcommand: str, verbose: bool, **fields) -> None:
	settings = get_settings()
	_configure_logging(settings, verbose)
	fields = {k: v for k, v in fields.items() if v is not None}
	fields.setdefault("t_max", settings.total_order_t_max if subcommand == "total-order" else settings.t_max)
	fields.setdefault("seed", settings.seed)
	try:
		config = RunConfig(subcommand=subcommand, verbose=verbose, **fields)
	except ValidationError as exc:
		logger.error(f"Invalid arguments: {exc}")
		raise typer.Exit(code=EXIT_PARSE_ERROR) from exc
	raise typer.Exit(code=run(config, settings))


@app.command()
def roots(input_path: InputArg = None, input_option: InputOpt = None, fixture: FixtureOpt = None, t_max: TMaxOpt = None, output_format: FormatOpt = "text", verbose: VerboseOpt = False) -> None:
	"""List the exceptional dimension vectors (one JSON object per line with --format json)."""
	_invoke("roots", verbose, input_path=input_path or input_option, fixture=fixture, t_max=t_max, output_format=output_format)


@app.command()
def table(input_path: InputArg = None, input_option: InputOpt = None, fixture: FixtureOpt = None, t_max: TMaxOpt = None, output_format: FormatOpt = "csv", verbose: VerboseOpt = False) -> None:
	"""Hom/Ext length table as CSV."""
	_invoke("table", verbose, input_path=input_path or input_option, fixture=fixture, t_max=t_max, output_format=output_format)


@app.command()
def facets(input_path: InputArg = None, input_option: InputOpt = None, fixture: FixtureOpt = None, t_max: TMaxOpt = None, output_format: FormatOpt = "text", verbose: VerboseOpt = False) -> None:
	"""Support-tilting modules, i.e. the facets of the cluster complex."""
	_invoke("facets", verbose, input_path=input_path or input_option, fixture=fixture, t_max=t_max, output_format=output_format)


@app.command()
def verify(input_path: InputArg = None, input_option: InputOpt = None, fixture: FixtureOpt = None, t_max: TMaxOpt = None, output_format: FormatOpt = "text", verbose: VerboseOpt = False) -> None:
	"""Run every structural check; exit 1 if any fails."""
	_invoke("verify", verbose, input_path=input_path or input_option, fixture=fixture, t_max=t_max, output_format=output_format)


@app.command()
def graph(input_path: InputArg = None, input_option: InputOpt = None, fixture: FixtureOpt = None, t_max: TMaxOpt = None, output_format: FormatOpt = "dot", verbose: VerboseOpt = False) -> None:
	"""Exchange graph as DOT (or JSON)."""
	_invoke("graph", verbose, input_path=input_path or input_option, fixture=fixture, t_max=t_max, output_format=output_format)


@app.command()
def descent(input_path: InputArg = None, input_option: InputOpt = None, fixture: FixtureOpt = None, output_format: FormatOpt = "text", verbose: VerboseOpt = False) -> None:
	"""Descent path from every facet to the zero facet."""
	_invoke("descent", verbose, input_path=input_path or input_option, fixture=fixture, output_format=output_format)


@app.command("total-order")
def total_order(
	r: Annotated[Optional[int], typer.Option("--r")] = None,
	s: Annotated[Optional[int], typer.Option("--s")] = None,
	u: Annotated[Optional[int], typer.Option("--u")] = None,
	v: Annotated[Optional[int], typer.Option("--v")] = None,
	weights: Annotated[Optional[list[int]], typer.Option("--weight", help="Additive function value at a vertex; give twice")] = None,
	t_max: TMaxOpt = None,
	seed: SeedOpt = None,
	output_format: FormatOpt = "text",
	verbose: VerboseOpt = False,
) -> None:
	"""Interleaving of the weighted AR sequences; sweeps all small (r, s) when no parameters are given."""
	_invoke(
		"total-order",
		verbose,
		r=r,
		s=s,
		u=u,
		v=v,
		weights=weights or None,
		t_max=t_max,
		seed=seed,
		output_format=output_format,
	)


@app.command("g2-demo")
def g2_demo(output_format: FormatOpt = "text", verbose: VerboseOpt = False) -> None:
	"""The G2 example end to end: AR order, lengths, mu^2, complements of (1,2) and the unit-endomorphism control."""
	_invoke("g2-demo", verbose, output_format=output_format)


def main() -> None:
	app()


if __name__ == "__main__":
	main()
