"""Support-tilting modules, complements and (relative, dual) Bongartz completions.

Completions are found by brute force over the support-tilting modules of the
catalog, which is small at the ranks this package targets. The Bongartz
complement B of T is the completion with Ext(B, M) = 0 for every M with
Ext(T, M) = 0; the dual complement C has Ext(M, C) = 0 whenever Ext(M, T) = 0.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

import networkx as nx
from networkx.algorithms import bipartite
from sympy import Matrix

from cluster_complex.algebra import ClusterComplexError, Vector, injective_dimv, projective_dimv
from cluster_complex.homext import HomExtOracle, RigidSet
from cluster_complex.reports import VerificationReport
from cluster_complex.roots import CatalogKind, NotFiniteType

logger = logging.getLogger(__name__)


class NotAlmostComplete(ClusterComplexError):
	pass


class NoCompletion(ClusterComplexError):
	pass


class NonUnique(ClusterComplexError):
	pass


class MatchingFailed(ClusterComplexError):
	pass


@dataclass(frozen=True)
class SupportTilting:
	"""A facet: basic rigid T that is tilting on its support, with sigma = sigma_T."""

	members: RigidSet
	sigma: frozenset[int]

	@property
	def is_zero(self) -> bool:
		return not self.members

	@property
	def is_sincere(self) -> bool:
		return not self.sigma


@dataclass(frozen=True)
class BongartzSplit:
	"""relative part (inside Lambda_T), the rest of the full complement, and the full complement."""

	relative: RigidSet
	rest: RigidSet
	full: RigidSet


def in_natural_span(vectors: list[Vector], target: Vector, *, nonzero: bool = False) -> bool:
	"""Is target a combination of linearly independent vectors with coefficients in N?"""
	if any(v < 0 for v in target):
		return False
	if not any(target):
		return not nonzero
	if not vectors:
		return False
	matrix = Matrix([list(v) for v in vectors]).T
	try:
		solution, params = matrix.gauss_jordan_solve(Matrix(list(target)))
	except ValueError:
		return False
	if len(params):
		raise ClusterComplexError(f"Vectors {vectors} are linearly dependent")
	return all(c.is_integer and c >= 0 for c in solution)


class TiltingCalculator:
	def __init__(self, oracle: HomExtOracle) -> None:
		self.oracle = oracle
		self.catalog = oracle.catalog
		self.algebra = oracle.algebra
		self._facets: list[SupportTilting] | None = None
		self._restricted: dict[frozenset[int], tuple[TiltingCalculator, dict[int, int]]] = {}

	def _require_finite(self, what: str) -> None:
		if self.catalog.kind is not CatalogKind.FINITE:
			raise NotFiniteType(f"{what} needs a finite-type catalog, got {self.catalog.kind.value}")

	def facet_of(self, members: Iterable[int]) -> SupportTilting:
		rigid = RigidSet.of(members)
		_, sigma = self.oracle.support(rigid)
		return SupportTilting(rigid, sigma)

	def support_tilting_sets(self) -> list[SupportTilting]:
		"""Every rigid set with as many members as support vertices; works on rank-2 windows too."""
		if self._facets is None:
			facets = []
			for rigid in self.oracle.rigid_sets():
				supp, sigma = self.oracle.support(rigid)
				if len(rigid) == len(supp):
					facets.append(SupportTilting(rigid, sigma))
			facets.sort(key=lambda f: (len(f.members), f.members.ids))
			self._facets = facets
			logger.info(f"Found {len(facets)} support-tilting modules for {self.algebra!r}")
		return list(self._facets)

	def enumerate_support_tilting(self) -> list[SupportTilting]:
		self._require_finite("enumerate_support_tilting")
		return self.support_tilting_sets()

	def zero_facet(self) -> SupportTilting:
		return SupportTilting(RigidSet(), self.algebra.vertices)

	def complements(self, members: Iterable[int], within: Iterable[int]) -> list[int]:
		"""Catalog ids X completing T to a support-tilting module with support W.

		Raises:
			NotAlmostComplete: T is not rigid, escapes W, or |W| != |T| + 1
		"""
		rigid = RigidSet.of(members)
		window = frozenset(within)
		supp, _ = self.oracle.support(rigid)
		if not self.oracle.is_rigid(rigid):
			raise NotAlmostComplete(f"{rigid} is not rigid")
		if not supp <= window or len(window) != len(rigid) + 1:
			raise NotAlmostComplete(f"{rigid} with support {sorted(supp)} is not almost complete in {sorted(window)}")
		found = []
		for x in self.catalog:
			if x.id in rigid or not self.algebra.support(x.dimv) <= window:
				continue
			if all(self.oracle.compatible(x.id, k) for k in rigid):
				found.append(x.id)
		return found

	def tilting_completions(self, members: Iterable[int]) -> list[RigidSet]:
		"""Complements B such that T + B is a tilting module (full support)."""
		rigid = RigidSet.of(members)
		return [
			f.members - rigid
			for f in self.support_tilting_sets()
			if f.is_sincere and rigid.issubset(f.members)
		]

	def _canonical_completion(self, members: Iterable[int], vanishes: Callable[[int, int], bool], kind: str) -> RigidSet:
		self._require_finite(kind)
		rigid = RigidSet.of(members)
		candidates = self.tilting_completions(rigid)
		if not candidates:
			raise NoCompletion(f"{rigid} has no completion to a tilting module")
		perpendicular = [m.id for m in self.catalog if all(vanishes(t, m.id) for t in rigid)]
		matches = [b for b in candidates if all(vanishes(x, m) for x in b for m in perpendicular)]
		if len(matches) != 1:
			raise NonUnique(f"{kind} complement of {rigid} is not unique: {matches} among {candidates}")
		return matches[0]

	def bongartz(self, members: Iterable[int]) -> RigidSet:
		return self._canonical_completion(members, lambda x, m: self.oracle.ext(x, m) == 0, "Bongartz")

	def dual_bongartz(self, members: Iterable[int]) -> RigidSet:
		return self._canonical_completion(members, lambda x, m: self.oracle.ext(m, x) == 0, "dual Bongartz")

	def restricted(self, sigma: Iterable[int]) -> tuple[TiltingCalculator, dict[int, int]]:
		"""Calculator for Lambda_sigma and the map from its catalog ids to ours."""
		key = frozenset(sigma)
		if key not in self._restricted:
			sub_catalog, id_map = self.catalog.restrict(key)
			self._restricted[key] = (TiltingCalculator(HomExtOracle(sub_catalog)), id_map)
		return self._restricted[key]

	def _relative(self, members: Iterable[int], dual: bool) -> BongartzSplit:
		rigid = RigidSet.of(members)
		_, sigma = self.oracle.support(rigid)
		full = self.dual_bongartz(rigid) if dual else self.bongartz(rigid)
		if not sigma:
			return BongartzSplit(relative=full, rest=RigidSet(), full=full)
		sub, id_map = self.restricted(sigma)
		inverse = {parent: child for child, parent in id_map.items()}
		inner = RigidSet.of(inverse[k] for k in rigid)
		local = sub.dual_bongartz(inner) if dual else sub.bongartz(inner)
		relative = RigidSet.of(id_map[k] for k in local)
		if not relative.issubset(full):
			raise ClusterComplexError(f"Relative complement {relative} of {rigid} is not a summand of {full}")
		return BongartzSplit(relative=relative, rest=full - rigid - relative, full=full)

	def relative_bongartz(self, members: Iterable[int]) -> BongartzSplit:
		"""B_1 is the Bongartz complement inside Lambda_T; `rest` is B_2."""
		return self._relative(members, dual=False)

	def relative_dual_bongartz(self, members: Iterable[int]) -> BongartzSplit:
		return self._relative(members, dual=True)

	def _match(self, left: list, right: list, edge: Callable[[object, object], bool], what: str) -> dict:
		if not left and not right:
			return {}
		graph = nx.Graph()
		top = [("l", a) for a in left]
		graph.add_nodes_from(top, bipartite=0)
		graph.add_nodes_from((("r", b) for b in right), bipartite=1)
		graph.add_edges_from((("l", a), ("r", b)) for a in left for b in right if edge(a, b))
		matching = bipartite.maximum_matching(graph, top_nodes=top)
		pairs = {a: matching[("l", a)][1] for a in left if ("l", a) in matching}
		if len(left) != len(right) or len(pairs) != len(left):
			raise MatchingFailed(f"No perfect matching for {what}: {left} against {right}")
		return pairs

	def match_projectives(self, members: Iterable[int]) -> dict[int, int]:
		"""Vertex i in sigma_T -> B(i) in B_2 with dimv B(i) - dimv P(i) in N-span(T)."""
		rigid = RigidSet.of(members)
		_, sigma = self.oracle.support(rigid)
		rest = self.relative_bongartz(rigid).rest
		basis = [self.catalog[k].dimv for k in rigid]

		def edge(i: int, b: int) -> bool:
			diff = tuple(x - p for x, p in zip(self.catalog[b].dimv, projective_dimv(self.algebra, i)))
			return in_natural_span(basis, diff)

		return self._match(sorted(sigma), list(rest), edge, f"B_2 of {rigid}")

	def match_injectives(self, members: Iterable[int]) -> dict[int, int]:
		"""Vertex i in sigma_T -> C(i) in C_2 with dimv C(i) - dimv I(i) in N-span(T)."""
		rigid = RigidSet.of(members)
		_, sigma = self.oracle.support(rigid)
		rest = self.relative_dual_bongartz(rigid).rest
		basis = [self.catalog[k].dimv for k in rigid]

		def edge(i: int, c: int) -> bool:
			diff = tuple(x - q for x, q in zip(self.catalog[c].dimv, injective_dimv(self.algebra, i)))
			return in_natural_span(basis, diff)

		return self._match(sorted(sigma), list(rest), edge, f"C_2 of {rigid}")

	def verify_b2_structure(self, members: Iterable[int]) -> VerificationReport:
		"""Check the B_2 / C_2 bijections with sigma_T and their endomorphism lengths."""
		self._require_finite("verify_b2_structure")
		rigid = RigidSet.of(members)
		_, sigma = self.oracle.support(rigid)
		report = VerificationReport(name="b2-structure", details={"T": list(rigid), "sigma": sorted(sigma)})
		split_b = self.relative_bongartz(rigid)
		split_c = self.relative_dual_bongartz(rigid)
		report.record("b2-size", len(split_b.rest) == len(sigma), f"|B_2| = {len(split_b.rest)}, |sigma_T| = {len(sigma)}")
		report.record("c2-size", len(split_c.rest) == len(sigma), f"|C_2| = {len(split_c.rest)}, |sigma_T| = {len(sigma)}")
		for check, matcher in (("b2-matching", self.match_projectives), ("c2-matching", self.match_injectives)):
			try:
				report.details[check] = matcher(rigid)
				report.record(check, True)
			except MatchingFailed as exc:
				report.record(check, False, str(exc))

		expected = Counter(self.algebra.symmetrizer[self.algebra.position(i)] for i in sigma)
		for check, part in (("b2-endos", split_b.rest), ("c2-endos", split_c.rest)):
			found = Counter(self.catalog[k].q for k in part)
			report.record(check, found == expected, f"lengths {sorted(found.elements())} != {sorted(expected.elements())}")
		return report

	def verify_bc_exchange(self, members: Iterable[int]) -> VerificationReport:
		"""Pair B_1 with C_1 so that dimv B(j) + dimv C(j) lies in N-span(T) and q(B(j)) = q(C(j))."""
		self._require_finite("verify_bc_exchange")
		rigid = RigidSet.of(members)
		b1 = self.relative_bongartz(rigid).relative
		c1 = self.relative_dual_bongartz(rigid).relative
		basis = [self.catalog[k].dimv for k in rigid]
		report = VerificationReport(name="bc-exchange", details={"T": list(rigid)})

		def edge(b: int, c: int) -> bool:
			x, y = self.catalog[b], self.catalog[c]
			if x.q != y.q:
				return False
			return in_natural_span(basis, tuple(p + q for p, q in zip(x.dimv, y.dimv)), nonzero=True)

		try:
			report.details["pairs"] = self._match(list(b1), list(c1), edge, f"B_1/C_1 of {rigid}")
			report.record("matching", True)
		except MatchingFailed as exc:
			report.record("matching", False, str(exc))
		return report
