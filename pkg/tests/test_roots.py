from __future__ import annotations

import random
from collections import defaultdict

import pytest

from cluster_complex.algebra import build_algebra, euler_form, length, symmetric_form
from cluster_complex.fixtures import FINITE_TYPE, RANK_TWO_INFINITE, get_fixture
from cluster_complex.roots import (
	CatalogKind,
	Component,
	NotFiniteType,
	NotRankTwo,
	RootBoundExceeded,
	UnsupportedAlgebra,
	build_catalog,
	classify_type,
	positive_roots,
	rank2_sequences,
	simple_reflection,
)

EXPECTED_ROOT_COUNTS = {"A1": 1, "A1xA1": 2, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6}


def test_simple_reflection():
	g2 = get_fixture("G2")
	assert simple_reflection(g2, 1, (0, 1)) == (1, 1)
	assert simple_reflection(g2, 1, simple_reflection(g2, 1, (0, 1))) == (0, 1)
	assert simple_reflection(get_fixture("A2"), 2, (1, 0)) == (1, 1)
	for name in FINITE_TYPE:
		algebra = get_fixture(name)
		for label in algebra.labels:
			assert simple_reflection(algebra, label, algebra.unit(label)) == tuple(-v for v in algebra.unit(label))


@pytest.mark.parametrize("name", FINITE_TYPE + RANK_TWO_INFINITE)
def test_simple_reflection_is_an_isometric_involution(name):
	algebra = get_fixture(name)
	rng = random.Random(5)
	for _ in range(40):
		x = tuple(rng.randint(-4, 4) for _ in range(algebra.n))
		y = tuple(rng.randint(-4, 4) for _ in range(algebra.n))
		for label in algebra.labels:
			sx, sy = simple_reflection(algebra, label, x), simple_reflection(algebra, label, y)
			assert simple_reflection(algebra, label, sx) == x
			assert symmetric_form(algebra, sx, sy) == symmetric_form(algebra, x, y)


def test_classify_type():
	assert classify_type(get_fixture("G2")) is CatalogKind.FINITE
	assert classify_type(get_fixture("Kronecker")) is CatalogKind.RANK_TWO_INFINITE
	assert classify_type(get_fixture("rank2-1-5")) is CatalogKind.RANK_TWO_INFINITE
	assert classify_type(get_fixture("affine-A2")) is CatalogKind.UNSUPPORTED
	for name in FINITE_TYPE:
		assert classify_type(get_fixture(name)) is CatalogKind.FINITE


def test_positive_roots_of_g2():
	catalog = positive_roots(get_fixture("G2"))
	assert catalog.dimension_vectors() == [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3)]
	assert [x.q for x in catalog] == [1, 3, 1, 1, 3, 3]
	assert [x.id for x in catalog] == list(range(6))


def test_positive_roots_small_cases():
	assert set(positive_roots(get_fixture("A2")).dimension_vectors()) == {(1, 0), (0, 1), (1, 1)}
	assert set(positive_roots(get_fixture("A1xA1")).dimension_vectors()) == {(1, 0), (0, 1)}


@pytest.mark.parametrize("name", FINITE_TYPE)
def test_root_counts_and_quadratic_form(name):
	algebra = get_fixture(name)
	catalog = positive_roots(algebra)
	assert len(catalog) == EXPECTED_ROOT_COUNTS[name]
	for x in catalog:
		assert euler_form(algebra, x.dimv, x.dimv) == x.q
		assert x.q in algebra.symmetrizer
	lengths = [(length(algebra, x.dimv), x.dimv) for x in catalog]
	assert lengths == sorted(lengths)


def test_positive_roots_errors():
	with pytest.raises(NotFiniteType):
		positive_roots(get_fixture("Kronecker"))
	with pytest.raises(RootBoundExceeded):
		positive_roots(get_fixture("D4"), bound=5)


def test_rank2_sequences_g2_is_the_ar_quiver():
	catalog = rank2_sequences(get_fixture("G2"), 2)
	assert catalog.kind is CatalogKind.FINITE
	assert catalog.dimension_vectors() == [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1), (1, 0)]
	assert all(x.component is Component.PREPROJECTIVE for x in catalog)


def test_rank2_sequences_kronecker():
	algebra = get_fixture("Kronecker")
	catalog = rank2_sequences(algebra, 3)
	assert catalog.kind is CatalogKind.RANK_TWO_INFINITE
	preprojective = [x for x in catalog if x.component is Component.PREPROJECTIVE]
	assert [x.dimv for x in preprojective[:4]] == [(0, 1), (1, 2), (2, 3), (3, 4)]
	assert [length(algebra, x.dimv) for x in preprojective[:4]] == [1, 3, 5, 7]
	assert len(preprojective) == 8
	preinjective = [x for x in catalog if x.component is Component.PREINJECTIVE]
	# Preinjectives run towards the simple injective I(1) = (1,0).
	assert [x.dimv for x in preinjective[-4:]] == [(4, 3), (3, 2), (2, 1), (1, 0)]
	assert len(preinjective) == 8
	assert all(x.q == 1 for x in catalog)


@pytest.mark.parametrize("name", ["A1xA1", "A2", "B2", "G2"])
def test_rank2_sequences_cover_the_finite_roots(name):
	algebra = get_fixture(name)
	merged = rank2_sequences(algebra, 6).dimension_vectors()
	assert len(merged) == len(set(merged))
	assert set(merged) == set(positive_roots(algebra).dimension_vectors())


@pytest.mark.parametrize("name", RANK_TWO_INFINITE)
def test_rank2_families_grow_strictly(name):
	families = defaultdict(list)
	for x in rank2_sequences(get_fixture(name), 6):
		families[x.component, x.vertex].append((x.t, x.dimv))
	assert len(families) == 4
	for members in families.values():
		members.sort()
		for (_, smaller), (_, larger) in zip(members, members[1:]):
			assert all(a < b for a, b in zip(smaller, larger)), (smaller, larger)


def test_rank2_sequences_vertex_tags():
	catalog = rank2_sequences(get_fixture("Kronecker"), 1)
	tags = [(x.component, x.t, x.vertex) for x in catalog if x.component is Component.PREPROJECTIVE]
	assert tags == [
		(Component.PREPROJECTIVE, 0, 2),
		(Component.PREPROJECTIVE, 0, 1),
		(Component.PREPROJECTIVE, 1, 2),
		(Component.PREPROJECTIVE, 1, 1),
	]


def test_rank2_sequences_rejects_other_ranks():
	with pytest.raises(NotRankTwo):
		rank2_sequences(get_fixture("A1"), 3)
	with pytest.raises(NotRankTwo):
		rank2_sequences(get_fixture("A3"), 3)


def test_build_catalog_dispatch():
	assert build_catalog(get_fixture("B2"), 10).kind is CatalogKind.FINITE
	window = build_catalog(get_fixture("rank2-1-5"), 3)
	assert window.kind is CatalogKind.RANK_TWO_INFINITE
	assert window.cutoff == 3
	with pytest.raises(UnsupportedAlgebra):
		build_catalog(get_fixture("affine-A2"), 10)


def test_catalog_find_and_restrict():
	catalog = positive_roots(get_fixture("A3"))
	assert catalog.find((0, 1, 0)).dimv == (0, 1, 0)
	with pytest.raises(KeyError):
		catalog.find((2, 0, 0))
	sub, id_map = catalog.restrict(frozenset({2}))
	assert sub.algebra.labels == (1, 3)
	assert sorted(sub.dimension_vectors()) == [(0, 1), (1, 0)]
	for child, parent in id_map.items():
		assert catalog[parent].dimv[1] == 0
		assert (catalog[parent].dimv[0], catalog[parent].dimv[2]) == sub[child].dimv


def test_rank_one_custom_symmetrizer():
	algebra = build_algebra([[2]], [5], [])
	catalog = positive_roots(algebra)
	assert catalog.dimension_vectors() == [(1,)]
	assert catalog[0].q == 5
