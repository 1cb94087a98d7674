from __future__ import annotations

import logging
from functools import cached_property
from pathlib import Path

from cluster_complex.algebra import AlgebraData
from cluster_complex.complex import (
	ClusterComplex,
	WindowComplex,
	build_complex,
	polygons,
	rank2_window_complex,
	verify_ap_axioms,
	verify_exchange_count,
	verify_faces_exhaustive,
	verify_flag_connected,
)
from cluster_complex.config import Settings, get_settings, load_algebra_spec
from cluster_complex.fixtures import get_fixture
from cluster_complex.homext import HomExtOracle
from cluster_complex.measure import Mu, mu, verify_all_endos, verify_descent, verify_rank2_corollary
from cluster_complex.reports import VerificationReport, VerifySummary
from cluster_complex.roots import CatalogKind, Indec, RootCatalog, build_catalog, classify_type
from cluster_complex.tilting import TiltingCalculator

logger = logging.getLogger(__name__)


class ClusterComplexService:
	"""Wires algebra -> catalog -> oracle -> tilting calculator -> complex, building each once."""

	def __init__(self, algebra: AlgebraData, settings: Settings | None = None, *, t_max: int | None = None) -> None:
		self.settings = settings or get_settings()
		self.algebra = algebra
		self.t_max = self.settings.t_max if t_max is None else t_max

	@classmethod
	def from_file(cls, path: str | Path, settings: Settings | None = None, **kwargs) -> ClusterComplexService:
		return cls(load_algebra_spec(path).build(), settings, **kwargs)

	@classmethod
	def from_fixture(cls, name: str, settings: Settings | None = None, **kwargs) -> ClusterComplexService:
		return cls(get_fixture(name), settings, **kwargs)

	@property
	def kind(self) -> CatalogKind:
		return classify_type(self.algebra)

	@cached_property
	def catalog(self) -> RootCatalog:
		return build_catalog(self.algebra, self.t_max, bound=self.settings.root_safety_bound)

	@cached_property
	def oracle(self) -> HomExtOracle:
		return HomExtOracle(self.catalog)

	@cached_property
	def tilting(self) -> TiltingCalculator:
		return TiltingCalculator(self.oracle)

	@cached_property
	def complex(self) -> ClusterComplex:
		return build_complex(self.tilting, flag_bfs_max_rank=self.settings.flag_bfs_max_rank)

	@cached_property
	def window(self) -> WindowComplex:
		return rank2_window_complex(self.catalog)

	def facets(self) -> list:
		if self.kind is CatalogKind.FINITE:
			return self.complex.facets
		return self.window.cluster.facets

	def exchange_graph(self):
		if self.kind is CatalogKind.FINITE:
			return self.complex.exchange_graph()
		return self.window.cluster.exchange_graph()

	def verify(self) -> VerifySummary:
		"""Every structural check that applies to this algebra."""
		if self.kind is not CatalogKind.FINITE:
			reports = [self.window.report]
			if self.algebra.n == 2:
				reports.append(verify_rank2_corollary(self.algebra, self.t_max))
			summary = VerifySummary(algebra=repr(self.algebra), kind=self.kind.value, facets=len(self.window.cluster.facets), reports=reports)
			logger.info(f"Verification of {self.algebra!r}: {summary.line()}")
			return summary

		complex_ = self.complex
		ap = verify_ap_axioms(complex_)
		reports: list[VerificationReport] = []
		for check in ("ap1", "ap2", "ap4", "simplicial"):
			part = VerificationReport(name=check, checks={check: ap.checks.get(check, True)})
			part.failures = [f for f in ap.failures if f.startswith(f"{check}:")]
			reports.append(part)
		reports.append(verify_flag_connected(complex_))
		reports.append(verify_all_endos(complex_))
		reports.append(verify_descent(complex_))
		reports.append(verify_faces_exhaustive(complex_))
		reports.append(verify_exchange_count(complex_))
		reports.append(self.oracle.verify_lin_indep())
		if self.algebra.n == 2 and self.algebra.arrows:
			reports.append(verify_rank2_corollary(self.algebra, self.t_max))
		summary = VerifySummary(
			algebra=repr(self.algebra),
			kind=self.kind.value,
			facets=len(complex_.facets),
			reports=reports,
			details={"f_vector": ap.details["f_vector"], "polygons": polygons(complex_)},
		)
		level = logging.INFO if summary.ok else logging.WARNING
		logger.log(level, f"Verification of {self.algebra!r}: {summary.line()}")
		return summary

	def measures(self) -> list[tuple[Indec, Mu]]:
		return [(x, mu(self.algebra, x)) for x in self.catalog]
