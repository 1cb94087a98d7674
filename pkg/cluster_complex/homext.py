"""Hom/Ext length oracle between exceptional modules.

Everything is derived from the Euler form <x, y> = l(Hom) - l(Ext). In finite
type at most one of the two is non-zero for non-isomorphic exceptionals; in the
rank-2 infinite window there are no maps from preinjectives to preprojectives.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx
from sympy import Matrix

from cluster_complex.algebra import ClusterComplexError, Vector, euler_form
from cluster_complex.reports import VerificationReport
from cluster_complex.roots import CatalogKind, Component, Indec, NotFiniteType, RootCatalog, UnsupportedAlgebra

logger = logging.getLogger(__name__)


class MixedCatalogs(ClusterComplexError):
	pass


class UnknownId(ClusterComplexError):
	pass


class OracleAssertion(ClusterComplexError):
	pass


@dataclass(frozen=True)
class HomExt:
	hom: int
	ext: int


@dataclass(frozen=True)
class RigidSet:
	"""Basic module as a sorted, duplicate-free tuple of catalog ids."""

	ids: tuple[int, ...] = ()

	@classmethod
	def of(cls, ids: Iterable[int]) -> RigidSet:
		return cls(tuple(sorted(set(ids))))

	def __iter__(self) -> Iterator[int]:
		return iter(self.ids)

	def __len__(self) -> int:
		return len(self.ids)

	def __contains__(self, item: object) -> bool:
		return item in self.ids

	def __or__(self, other: Iterable[int]) -> RigidSet:
		return RigidSet.of(itertools.chain(self.ids, other))

	def __sub__(self, other: Iterable[int]) -> RigidSet:
		removed = set(other)
		return RigidSet(tuple(k for k in self.ids if k not in removed))

	def issubset(self, other: Iterable[int]) -> bool:
		return set(self.ids) <= set(other)


class HomExtOracle:
	"""Hom/Ext lengths for every ordered pair of a catalog.

	The full table is computed eagerly so that lookups are read-only.
	"""

	def __init__(self, catalog: RootCatalog) -> None:
		if catalog.kind is CatalogKind.UNSUPPORTED:
			raise UnsupportedAlgebra(f"No hom/ext oracle for {catalog.algebra!r}")
		self.catalog = catalog
		self.algebra = catalog.algebra
		self._table = [[self._compute(x, y) for y in catalog] for x in catalog]
		logger.debug(f"Built {len(catalog)}x{len(catalog)} hom/ext table for {self.algebra!r}")

	def _compute(self, x: Indec, y: Indec) -> HomExt:
		b = euler_form(self.algebra, x.dimv, y.dimv)
		if x.id == y.id:
			entry = HomExt(x.q, 0)
		elif self.catalog.kind is CatalogKind.FINITE or x.component == y.component:
			entry = HomExt(max(b, 0), max(-b, 0))
		elif x.component is Component.PREPROJECTIVE:
			if b < 0:
				raise OracleAssertion(f"<{x.dimv}, {y.dimv}> = {b} < 0 from a preprojective to a preinjective")
			entry = HomExt(b, 0)
		else:
			if b > 0:
				raise OracleAssertion(f"<{x.dimv}, {y.dimv}> = {b} > 0 from a preinjective to a preprojective")
			entry = HomExt(0, -b)
		if entry.hom - entry.ext != b:
			raise OracleAssertion(f"hom - ext = {entry.hom - entry.ext} but <{x.dimv}, {y.dimv}> = {b}")
		return entry

	def _member(self, x: Indec) -> Indec:
		if not (0 <= x.id < len(self.catalog)) or self.catalog[x.id] != x:
			raise MixedCatalogs(f"{x} does not belong to the catalog of {self.algebra!r}")
		return x

	def _check_ids(self, ids: Iterable[int]) -> list[int]:
		checked = list(ids)
		for k in checked:
			if not (0 <= k < len(self.catalog)):
				raise UnknownId(f"Unknown catalog id {k} (catalog has {len(self.catalog)} members)")
		return checked

	def hom_ext(self, x: Indec, y: Indec) -> HomExt:
		return self._table[self._member(x).id][self._member(y).id]

	def hom(self, i: int, j: int) -> int:
		return self._table[i][j].hom

	def ext(self, i: int, j: int) -> int:
		return self._table[i][j].ext

	def compatible(self, i: int, j: int) -> bool:
		return self._table[i][j].ext == 0 and self._table[j][i].ext == 0

	def is_rigid(self, ids: Iterable[int]) -> bool:
		members = self._check_ids(ids)
		return all(self.compatible(i, j) for i, j in itertools.combinations_with_replacement(members, 2))

	def support(self, ids: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
		"""Return (supp, sigma_T) as sets of vertex labels."""
		members = self._check_ids(ids)
		supp = frozenset().union(*(self.algebra.support(self.catalog[k].dimv) for k in members))
		return supp, self.algebra.vertices - supp

	def dimension_vector(self, ids: Iterable[int], multiplicities: Iterable[int] | None = None) -> Vector:
		members = self._check_ids(ids)
		weights = list(multiplicities) if multiplicities is not None else [1] * len(members)
		total = [0] * self.algebra.n
		for k, m in zip(members, weights):
			for p, v in enumerate(self.catalog[k].dimv):
				total[p] += m * v
		return tuple(total)

	def table(self) -> list[list[HomExt]]:
		return [list(row) for row in self._table]

	def compatibility_graph(self) -> nx.Graph:
		graph = nx.Graph()
		graph.add_nodes_from(x.id for x in self.catalog)
		graph.add_edges_from(
			(i, j) for i, j in itertools.combinations(range(len(self.catalog)), 2) if self.compatible(i, j)
		)
		return graph

	def rigid_sets(self) -> Iterator[RigidSet]:
		"""Every basic rigid module, the zero module first."""
		yield RigidSet()
		for clique in nx.enumerate_all_cliques(self.compatibility_graph()):
			yield RigidSet.of(clique)

	def rigid_dimv_unique(self, bound: int = 2) -> VerificationReport:
		"""No two different rigid modules (multiplicities up to `bound`) share a dimension vector."""
		if self.catalog.kind is not CatalogKind.FINITE:
			raise NotFiniteType(f"Uniqueness check needs a finite-type catalog, got {self.catalog.kind.value}")
		report = VerificationReport(name="rigid-dimv-unique")
		seen: dict[Vector, tuple[RigidSet, tuple[int, ...]]] = {}
		modules = 0
		for rigid in self.rigid_sets():
			for multiplicities in itertools.product(range(1, bound + 1), repeat=len(rigid)):
				modules += 1
				total = self.dimension_vector(rigid, multiplicities)
				if total in seen:
					other = seen[total]
					report.record(
						"unique",
						False,
						f"{total} is the dimension vector of {other} and of {(rigid, multiplicities)}",
					)
				else:
					seen[total] = (rigid, multiplicities)
		report.record("unique", True)
		report.details["modules"] = modules
		return report

	def verify_lin_indep(self) -> VerificationReport:
		report = VerificationReport(name="lin-indep")
		count = 0
		for rigid in self.rigid_sets():
			if not rigid:
				continue
			count += 1
			supp, _ = self.support(rigid)
			rank = Matrix([list(self.catalog[k].dimv) for k in rigid]).rank()
			report.record("independent", rank == len(rigid), f"{rigid} has rank {rank}")
			report.record("size", len(rigid) <= len(supp), f"{rigid} has more members than support vertices")
		report.details["rigid_sets"] = count
		return report
