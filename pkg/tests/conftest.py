from __future__ import annotations

import pytest

from cluster_complex.algebra import AlgebraData, build_algebra
from cluster_complex.complex import ClusterComplex, build_complex
from cluster_complex.fixtures import get_fixture
from cluster_complex.homext import HomExtOracle
from cluster_complex.roots import RootCatalog, build_catalog
from cluster_complex.tilting import TiltingCalculator


class Bundle:
	"""Algebra, catalog, oracle and calculator of one fixture, built lazily."""

	def __init__(self, algebra: AlgebraData, t_max: int = 10) -> None:
		self.algebra = algebra
		self.catalog: RootCatalog = build_catalog(algebra, t_max)
		self.oracle = HomExtOracle(self.catalog)
		self.tilting = TiltingCalculator(self.oracle)
		self._complex: ClusterComplex | None = None

	@property
	def complex(self) -> ClusterComplex:
		if self._complex is None:
			self._complex = build_complex(self.tilting)
		return self._complex

	def ids(self, *dimvs: tuple[int, ...]) -> list[int]:
		return [self.catalog.find(d).id for d in dimvs]


_BUNDLES: dict[str, Bundle] = {}


@pytest.fixture(scope="session")
def bundle():
	"""bundle("G2") -> cached Bundle for a bundled fixture."""

	def get(name: str) -> Bundle:
		if name not in _BUNDLES:
			_BUNDLES[name] = Bundle(get_fixture(name))
		return _BUNDLES[name]

	return get


@pytest.fixture(scope="session")
def g2(bundle) -> Bundle:
	return bundle("G2")


@pytest.fixture(scope="session")
def a2(bundle) -> Bundle:
	return bundle("A2")


@pytest.fixture(scope="session")
def a3(bundle) -> Bundle:
	return bundle("A3")


@pytest.fixture(scope="session")
def a2_reversed() -> Bundle:
	"""A2 with the arrow (2, 1), so that P(1) is simple."""
	return Bundle(build_algebra([[2, -1], [-1, 2]], [1, 1], [(2, 1)], name="A2-reversed"))


@pytest.fixture(scope="session")
def kronecker(bundle) -> Bundle:
	return bundle("Kronecker")
