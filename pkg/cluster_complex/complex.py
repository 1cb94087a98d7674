"""The cluster complex: face poset of pairs (T, sigma), its exchange graph and polytope checks.

Faces are stored as frozensets of vertex ids. Coordinate vertex i keeps its
label i; catalog member k becomes vertex n + 1 + k. The top element is
implicit.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx

from cluster_complex.algebra import ClusterComplexError
from cluster_complex.homext import HomExtOracle, RigidSet
from cluster_complex.reports import CofaceProfile, VerificationReport, format_vector
from cluster_complex.roots import CatalogKind, Component, RootCatalog, rank2_sequences
from cluster_complex.tilting import SupportTilting, TiltingCalculator

logger = logging.getLogger(__name__)

FaceKey = frozenset[int]

POLYGONS = {4: "square", 5: "pentagon", 6: "hexagon", 8: "octagon"}


class NotProperFace(ClusterComplexError):
	pass


class NotRankTwoInfinite(ClusterComplexError):
	pass


@dataclass(frozen=True)
class Face:
	members: RigidSet
	sigma: frozenset[int]

	@property
	def rank(self) -> int:
		return len(self.members) + len(self.sigma) - 1


class ClusterComplex:
	def __init__(self, calculator: TiltingCalculator, facets: Iterable[SupportTilting], *, flag_bfs_max_rank: int = 3) -> None:
		self.calculator = calculator
		self.oracle = calculator.oracle
		self.catalog = calculator.catalog
		self.algebra = calculator.algebra
		self.n = self.algebra.n
		self.flag_bfs_max_rank = flag_bfs_max_rank
		self.facets = list(facets)
		self.facet_keys = [self.key(f) for f in self.facets]
		faces: set[FaceKey] = set()
		for key in self.facet_keys:
			for size in range(len(key) + 1):
				faces.update(frozenset(c) for c in itertools.combinations(sorted(key), size))
		self.faces = frozenset(faces)
		self._graph: nx.Graph | None = None

	def __repr__(self) -> str:
		return f"<ClusterComplex {self.algebra!r} facets={len(self.facets)} faces={len(self.faces)}>"

	@property
	def offset(self) -> int:
		return max(self.algebra.labels, default=0) + 1

	def key(self, face: Face | SupportTilting) -> FaceKey:
		return frozenset(face.sigma) | frozenset(self.offset + k for k in face.members)

	def face(self, key: Iterable[int]) -> Face:
		ids = frozenset(key)
		return Face(
			members=RigidSet.of(v - self.offset for v in ids if v >= self.offset),
			sigma=frozenset(v for v in ids if v < self.offset),
		)

	def vertex_of_member(self, member: int) -> int:
		return self.offset + member

	def vertices(self) -> frozenset[int]:
		return frozenset().union(*self.facet_keys) if self.facet_keys else frozenset()

	def label(self, key: Iterable[int]) -> str:
		face = self.face(key)
		modules = ",".join(format_vector(self.catalog[k].dimv) for k in face.members)
		return f"{modules}|{','.join(str(i) for i in sorted(face.sigma))}"

	def facets_containing(self, key: Iterable[int]) -> list[FaceKey]:
		target = frozenset(key)
		return [f for f in self.facet_keys if target <= f]

	def covers(self, key: FaceKey) -> Iterator[FaceKey]:
		for v in self.vertices() - key:
			larger = key | {v}
			if larger in self.faces:
				yield larger

	def flags(self) -> Iterator[tuple[FaceKey, ...]]:
		"""Maximal chains of proper non-empty faces, bottom to top."""
		stack: list[tuple[FaceKey, ...]] = [(frozenset(),)]
		while stack:
			chain = stack.pop()
			following = list(self.covers(chain[-1]))
			if not following:
				yield chain[1:]
			stack.extend(chain + (g,) for g in following)

	def exchange_graph(self) -> nx.Graph:
		if self._graph is None:
			graph = nx.Graph()
			for index, key in enumerate(self.facet_keys):
				graph.add_node(key, label=self.label(key), index=index)
			for left, right in itertools.combinations(self.facet_keys, 2):
				if len(left ^ right) == 2:
					graph.add_edge(left, right)
			self._graph = graph
		return self._graph

	def without_facet(self, index: int) -> ClusterComplex:
		kept = [f for k, f in enumerate(self.facets) if k != index]
		return ClusterComplex(self.calculator, kept, flag_bfs_max_rank=self.flag_bfs_max_rank)


def build_complex(calculator: TiltingCalculator, *, flag_bfs_max_rank: int = 3) -> ClusterComplex:
	complex_ = ClusterComplex(calculator, calculator.enumerate_support_tilting(), flag_bfs_max_rank=flag_bfs_max_rank)
	logger.info(f"Built {complex_!r}")
	return complex_


def exchange_graph(complex_: ClusterComplex) -> nx.Graph:
	return complex_.exchange_graph()


def f_vector(complex_: ClusterComplex) -> list[int]:
	"""Number of faces of rank -1, 0, ..., n - 1."""
	counts = Counter(len(face) for face in complex_.faces)
	return [counts.get(size, 0) for size in range(complex_.n + 1)]


def verify_ap_axioms(complex_: ClusterComplex) -> VerificationReport:
	n = complex_.n
	report = VerificationReport(name="ap", details={"f_vector": f_vector(complex_)})

	report.record("ap1", frozenset() in complex_.faces, "no empty face")
	oversized = [sorted(f) for f in complex_.faces if len(f) > n]
	report.record("ap1", not oversized, f"faces above the top rank: {oversized}")

	for key in complex_.facet_keys:
		report.record("ap2", len(key) == n, f"facet {complex_.label(key)} has rank {len(key) - 1}")
		for other in complex_.facet_keys:
			if key < other:
				report.record("ap2", False, f"facet {complex_.label(key)} lies inside {complex_.label(other)}")
	if n <= complex_.flag_bfs_max_rank:
		lengths = Counter(len(flag) + 1 for flag in complex_.flags())
		report.details["flag_lengths"] = dict(lengths)
		report.record("ap2", set(lengths) == {n + 1}, f"flag lengths {dict(lengths)}")

	for key in complex_.faces:
		if len(key) == n - 1:
			count = len(complex_.facets_containing(key))
			report.record("ap4", count == 2, f"ridge {complex_.label(key)} lies in {count} facets")
		for removed in itertools.combinations(sorted(key), 2):
			lower = key - set(removed)
			between = sum(1 for v in removed if lower | {v} in complex_.faces)
			if lower in complex_.faces:
				report.record("ap4", between == 2, f"section {sorted(lower)} < {sorted(key)} has {between + 2} elements")
			else:
				report.record("simplicial", False, f"{sorted(lower)} missing below {sorted(key)}")

	for key in complex_.faces:
		missing = [sorted(key - {v}) for v in key if key - {v} not in complex_.faces]
		report.record("simplicial", not missing, f"{sorted(key)} is missing the faces {missing}")

	report.checks.setdefault("ap4", True)
	level = logging.INFO if report.ok else logging.WARNING
	logger.log(level, f"AP axioms for {complex_.algebra!r}: {report.checks}")
	return report


def verify_flag_connected(complex_: ClusterComplex) -> VerificationReport:
	report = VerificationReport(name="strong-flag")
	graph = complex_.exchange_graph()
	report.record("connected", graph.number_of_nodes() > 0 and nx.is_connected(graph), "exchange graph is disconnected")

	zero = complex_.key(complex_.calculator.zero_facet())
	if zero in graph:
		reachable = nx.node_connected_component(graph, zero)
		report.record("zero-reachable", len(reachable) == graph.number_of_nodes(), f"{graph.number_of_nodes() - len(reachable)} facets cannot reach the zero facet")
	else:
		report.record("zero-reachable", False, "zero facet missing")

	for key in complex_.faces:
		members = complex_.facets_containing(key)
		if len(members) > 1:
			sub = graph.subgraph(members)
			report.record("cofaces", nx.is_connected(sub), f"co-face of {complex_.label(key)} is disconnected")
	report.checks.setdefault("cofaces", True)

	if complex_.n <= complex_.flag_bfs_max_rank:
		flags = list(complex_.flags())
		flag_graph = nx.Graph()
		flag_graph.add_nodes_from(range(len(flags)))
		groups: dict[tuple, list[int]] = defaultdict(list)
		for index, flag in enumerate(flags):
			for position in range(len(flag)):
				groups[(position, flag[:position] + flag[position + 1:])].append(index)
		for group in groups.values():
			report.record("diamond", len(group) == 2, f"{len(group)} flags share all but one face")
			flag_graph.add_edges_from(zip(group, group[1:]))
		report.details["flags"] = len(flags)
		report.record("flags", len(flags) > 0 and nx.is_connected(flag_graph), "flag graph is disconnected")
	logger.info(f"Flag connectivity for {complex_.algebra!r}: {report.checks}")
	return report


def coface_profile(complex_: ClusterComplex, face: Iterable[int] | Face) -> CofaceProfile:
	"""Rank and facet count of the section above a proper face; rank-2 sections are classified."""
	key = complex_.key(face) if isinstance(face, Face) else frozenset(face)
	if key not in complex_.faces:
		raise NotProperFace(f"{sorted(key)} is not a proper face of {complex_!r}")
	rank = complex_.n - len(key)
	members = complex_.facets_containing(key)
	profile = CofaceProfile(face=sorted(key), rank=rank, facet_count=len(members))
	if rank == 2:
		sub = complex_.exchange_graph().subgraph(members)
		profile.is_cycle = len(members) >= 3 and nx.is_connected(sub) and all(d == 2 for _, d in sub.degree())
		profile.polygon = POLYGONS.get(len(members)) if profile.is_cycle else None
	return profile


def polygons(complex_: ClusterComplex) -> dict[str, int]:
	"""Classify every rank-2 co-face."""
	counts: Counter[str] = Counter()
	for key in complex_.faces:
		if len(key) == complex_.n - 2:
			counts[coface_profile(complex_, key).polygon or "invalid"] += 1
	return dict(counts)


def verify_faces_exhaustive(complex_: ClusterComplex) -> VerificationReport:
	"""The closure of the facets equals every pair (T, sigma) with T rigid and sigma inside sigma_T."""
	report = VerificationReport(name="faces")
	expected: set[FaceKey] = set()
	for rigid in complex_.oracle.rigid_sets():
		_, sigma = complex_.oracle.support(rigid)
		for size in range(len(sigma) + 1):
			for chosen in itertools.combinations(sorted(sigma), size):
				expected.add(complex_.key(Face(rigid, frozenset(chosen))))
	extra = complex_.faces - expected
	missing = expected - complex_.faces
	report.record("closure", not extra, f"{len(extra)} faces are not rigid pairs")
	report.record("complete", not missing, f"{len(missing)} rigid pairs are not faces")
	report.details["faces"] = len(complex_.faces)
	return report


def verify_exchange_count(complex_: ClusterComplex) -> VerificationReport:
	"""Ridges lie in two facets; inside the support W of a facet, almost-complete modules sincere on W have two completions, others one."""
	report = VerificationReport(name="exchange", details={"sincere_cases": 0, "insincere_cases": 0})
	calculator = complex_.calculator
	for facet, key in zip(complex_.facets, complex_.facet_keys):
		for v in key:
			count = len(complex_.facets_containing(key - {v}))
			report.record("ridges", count == 2, f"ridge {complex_.label(key - {v})} lies in {count} facets")
		window = complex_.algebra.vertices - facet.sigma
		for x in facet.members:
			rest = facet.members - [x]
			supp, _ = complex_.oracle.support(rest)
			sincere = supp == window
			expected = 2 if sincere else 1
			found = calculator.complements(rest, window)
			report.details["sincere_cases" if sincere else "insincere_cases"] += 1
			report.record(
				"completions",
				len(found) == expected,
				f"{list(rest)} has completions {found} in {sorted(window)}, expected {expected}",
			)
	report.checks.setdefault("completions", True)
	return report


@dataclass
class WindowComplex:
	cluster: ClusterComplex
	expected: list[SupportTilting]
	report: VerificationReport


def _ar_pairs(catalog: RootCatalog, component: Component) -> list[RigidSet]:
	chain = [x.id for x in catalog if x.component is component]
	return [RigidSet.of(pair) for pair in zip(chain, chain[1:])]


def rank2_window_complex(catalog: RootCatalog, t_max: int | None = None) -> WindowComplex:
	"""Support-tilting modules of a rank-2 representation-infinite window.

	The facets must be exactly the AR-adjacent pairs of each component plus the
	three facets involving coordinate vertices; the exchange graph is a path.
	"""
	if catalog.kind is not CatalogKind.RANK_TWO_INFINITE:
		raise NotRankTwoInfinite(f"Expected a rank-2 representation-infinite catalog, got {catalog.kind.value}")
	if t_max is not None and t_max != catalog.cutoff:
		catalog = rank2_sequences(catalog.algebra, t_max)
	calculator = TiltingCalculator(HomExtOracle(catalog))
	complex_ = ClusterComplex(calculator, calculator.support_tilting_sets())
	algebra = catalog.algebra
	report = VerificationReport(name="window", details={"cutoff": catalog.cutoff})

	expected = [calculator.facet_of(pair) for c in Component for pair in _ar_pairs(catalog, c)]
	for label in algebra.labels:
		expected.append(calculator.facet_of([catalog.find(algebra.unit(label)).id]))
	expected.append(calculator.zero_facet())
	actual = {complex_.key(f) for f in complex_.facets}
	wanted = {complex_.key(f) for f in expected}
	report.record("facets", actual == wanted, f"unexpected {sorted(map(complex_.label, actual - wanted))}, missing {sorted(map(complex_.label, wanted - actual))}")

	counts = Counter(v for key in complex_.facet_keys for v in key)
	ends = [complex_.label([v]) for v, c in counts.items() if c == 1]
	report.record("ridges", len(ends) == 2 and all(c in (1, 2) for c in counts.values()), f"window ends {ends}, counts {sorted(counts.values())}")

	graph = complex_.exchange_graph()
	is_path = graph.number_of_nodes() > 0 and nx.is_tree(graph) and max(d for _, d in graph.degree()) <= 2
	report.record("path", is_path, "exchange graph is not a path")
	report.details["facets"] = len(complex_.facets)
	logger.info(f"Rank-2 window up to t={catalog.cutoff}: {len(complex_.facets)} facets, ok={report.ok}")
	return WindowComplex(cluster=complex_, expected=expected, report=report)
