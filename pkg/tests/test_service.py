from __future__ import annotations

from pathlib import Path

import pytest

from cluster_complex.config import Settings
from cluster_complex.roots import CatalogKind, UnsupportedAlgebra
from cluster_complex.service import ClusterComplexService

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="module")
def settings() -> Settings:
	return Settings(_env_file=None)


def test_verify_g2(settings):
	service = ClusterComplexService.from_file(DATA / "g2.json", settings)
	summary = service.verify()
	assert summary.ok, [f for r in summary.reports for f in r.failures]
	assert summary.facets == 8
	assert summary.line() == "facets=8 ap1 ✓ ap2 ✓ ap4 ✓ strong-flag ✓ endos ✓ descent ✓"
	assert summary.details["polygons"] == {"octagon": 1}
	assert summary.details["f_vector"] == [1, 8, 8]
	assert "rank2-corollary" in [r.name for r in summary.reports]


@pytest.mark.parametrize("name", ["A1", "A1xA1", "A3", "B3", "C3"])
def test_verify_finite_fixtures(settings, name):
	summary = ClusterComplexService.from_fixture(name, settings).verify()
	assert summary.ok, [f for r in summary.reports for f in r.failures]


def test_verify_kronecker_window(settings):
	service = ClusterComplexService.from_file(DATA / "kronecker.json", settings, t_max=4)
	assert service.kind is CatalogKind.RANK_TWO_INFINITE
	summary = service.verify()
	assert summary.ok
	assert summary.line() == "facets=21 window ✓ rank2-corollary ✓"
	assert len(service.facets()) == 21
	assert service.exchange_graph().number_of_nodes() == 21


def test_unsupported_algebra(settings):
	service = ClusterComplexService.from_file(DATA / "affine-a2.json", settings)
	assert service.kind is CatalogKind.UNSUPPORTED
	with pytest.raises(UnsupportedAlgebra):
		service.verify()


def test_measures(settings):
	service = ClusterComplexService.from_fixture("G2", settings)
	squares = {x.dimv: m.squared for x, m in service.measures()}
	assert squares == {(0, 1): 1, (1, 0): 3, (1, 1): 16, (1, 2): 25, (1, 3): 12, (2, 3): 27}


def test_unknown_fixture(settings):
	with pytest.raises(KeyError):
		ClusterComplexService.from_fixture("E9", settings)
