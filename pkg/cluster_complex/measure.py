"""The measure mu(M) = l(M) / sqrt(l(End M)), lambda vectors and the descent to the zero facet.

Nothing here is evaluated as a real number: mu values compare by cross-multiplied
squares, which is exact on (length, q) pairs.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

import networkx as nx
from sympy import Rational

from cluster_complex.algebra import (
	AlgebraData,
	ClusterComplexError,
	Vector,
	build_algebra,
	component_count,
	length,
)
from cluster_complex.complex import ClusterComplex
from cluster_complex.homext import HomExtOracle, RigidSet
from cluster_complex.reports import VerificationReport
from cluster_complex.roots import (
	CatalogKind,
	Component,
	Indec,
	NotRankTwo,
	RootCatalog,
	build_catalog,
	rank2_sequences,
)
from cluster_complex.tilting import SupportTilting, TiltingCalculator

logger = logging.getLogger(__name__)


class ZeroModule(ClusterComplexError):
	pass


class NoDescent(ClusterComplexError):
	pass


class NotRepresentationInfinite(ClusterComplexError):
	pass


class SymmetrizabilityViolation(ClusterComplexError):
	pass


class LengthMismatch(ClusterComplexError):
	pass


class Disconnected(ClusterComplexError):
	pass


class Ordering(IntEnum):
	LESS = -1
	EQUAL = 0
	GREATER = 1


@dataclass(frozen=True, eq=False)
class Mu:
	"""mu = ell / sqrt(q); Mu(0, 1) is the zero entry of a lambda vector."""

	ell: int
	q: int

	@property
	def squared(self) -> Rational:
		return Rational(self.ell * self.ell, self.q)

	def _key(self, other: Mu) -> tuple[int, int]:
		return self.ell * self.ell * other.q, other.ell * other.ell * self.q

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, Mu):
			return NotImplemented
		left, right = self._key(other)
		return left == right

	def __lt__(self, other: Mu) -> bool:
		left, right = self._key(other)
		return left < right

	def __le__(self, other: Mu) -> bool:
		left, right = self._key(other)
		return left <= right

	def __gt__(self, other: Mu) -> bool:
		return other < self

	def __ge__(self, other: Mu) -> bool:
		return other <= self

	def __hash__(self) -> int:
		return hash(self.squared)

	def __repr__(self) -> str:
		return f"Mu({self.ell}/sqrt({self.q}))"


ZERO_MU = Mu(0, 1)


@dataclass(frozen=True)
class LambdaVector:
	entries: tuple[Mu, ...]

	def __len__(self) -> int:
		return len(self.entries)

	def squares(self) -> list[Rational]:
		return [m.squared for m in self.entries]


def mu(algebra: AlgebraData, x: Indec) -> Mu:
	return Mu(length(algebra, x.dimv), x.q)


def mu_compare(a: Mu, b: Mu) -> Ordering:
	if a < b:
		return Ordering.LESS
	if a == b:
		return Ordering.EQUAL
	return Ordering.GREATER


def lambda_vector(catalog: RootCatalog, facet: SupportTilting) -> LambdaVector:
	"""|sigma_T| zeros followed by the mu values of T in non-decreasing order."""
	values = sorted(mu(catalog.algebra, catalog[k]) for k in facet.members)
	zeros = (ZERO_MU,) * (catalog.algebra.n - len(values))
	return LambdaVector(zeros + tuple(values))


def lambda_compare(x: LambdaVector, y: LambdaVector) -> Ordering:
	if len(x) != len(y):
		raise LengthMismatch(f"Cannot compare lambda vectors of lengths {len(x)} and {len(y)}")
	for a, b in zip(x.entries, y.entries):
		order = mu_compare(a, b)
		if order is not Ordering.EQUAL:
			return order
	return Ordering.EQUAL


@dataclass(frozen=True)
class DescentStep:
	source: SupportTilting
	target: SupportTilting
	# Vertices of the co-face inside which source and target are mutation equivalent.
	pivot_members: RigidSet
	pivot_sigma: frozenset[int]


def _lift(sigma: frozenset[int], step: DescentStep, id_map: dict[int, int]) -> DescentStep:
	def up(facet: SupportTilting) -> SupportTilting:
		return SupportTilting(RigidSet.of(id_map[k] for k in facet.members), facet.sigma | sigma)

	return DescentStep(source=up(step.source), target=up(step.target), pivot_members=RigidSet(), pivot_sigma=sigma)


def _step(calculator: TiltingCalculator, facet: SupportTilting) -> DescentStep:
	catalog = calculator.catalog
	if facet.is_zero:
		raise ZeroModule("The zero module is the end of every descent")

	if facet.sigma:
		sub, id_map = calculator.restricted(facet.sigma)
		inverse = {parent: child for child, parent in id_map.items()}
		inner = sub.facet_of(inverse[k] for k in facet.members)
		return _lift(facet.sigma, _step(sub, inner), id_map)

	if calculator.algebra.n == 1:
		return DescentStep(facet, calculator.zero_facet(), RigidSet(), frozenset())

	current = lambda_vector(catalog, facet)
	pivot = min(facet.members, key=lambda k: (mu(catalog.algebra, catalog[k]), k))
	candidates = []
	for split in (calculator.relative_bongartz([pivot]), calculator.relative_dual_bongartz([pivot])):
		option = calculator.facet_of(split.relative | [pivot])
		candidates.append((lambda_vector(catalog, option), option))
	smaller = [(vec, option) for vec, option in candidates if lambda_compare(vec, current) is Ordering.LESS]
	if not smaller:
		raise NoDescent(
			f"Neither completion of {catalog[pivot].dimv} lowers lambda of {[catalog[k].dimv for k in facet.members]}"
		)
	best = smaller[0]
	for vec, option in smaller[1:]:
		if lambda_compare(vec, best[0]) is Ordering.LESS:
			best = (vec, option)
	return DescentStep(facet, best[1], RigidSet.of([pivot]), frozenset())


def descent_step(calculator: TiltingCalculator, facet: SupportTilting) -> SupportTilting:
	"""One mutation-equivalent move to a support-tilting module with smaller lambda.

	Raises:
		ZeroModule: the facet is already the zero module
		NoDescent: neither relative completion of the minimal summand is smaller
	"""
	return _step(calculator, facet).target


def verify_descent(complex_: ClusterComplex) -> VerificationReport:
	"""Iterate descent from every facet; lambda must drop strictly until the zero facet."""
	calculator = complex_.calculator
	catalog = complex_.catalog
	graph = complex_.exchange_graph()
	bound = len(complex_.facets)
	report = VerificationReport(name="descent")
	lengths: dict[str, int] = {}
	for facet in complex_.facets:
		steps = 0
		current = facet
		while not current.is_zero:
			if steps >= bound:
				report.record("terminates", False, f"descent from {complex_.label(complex_.key(facet))} exceeded {bound} steps")
				break
			try:
				step = _step(calculator, current)
			except NoDescent as exc:
				report.record("strict", False, str(exc))
				break
			before, after = lambda_vector(catalog, current), lambda_vector(catalog, step.target)
			report.record("strict", lambda_compare(after, before) is Ordering.LESS, f"{before} -> {after} does not decrease")
			pivot = frozenset(step.pivot_sigma) | frozenset(complex_.vertex_of_member(k) for k in step.pivot_members)
			source, target = complex_.key(step.source), complex_.key(step.target)
			within = graph.subgraph(complex_.facets_containing(pivot))
			report.record(
				"mutation",
				source in within and target in within and nx.has_path(within, source, target),
				f"{complex_.label(source)} and {complex_.label(target)} are not connected above {sorted(pivot)}",
			)
			logger.debug(f"Descent {complex_.label(source)} -> {complex_.label(target)}")
			current = step.target
			steps += 1
		lengths[complex_.label(complex_.key(facet))] = steps
	report.checks.setdefault("strict", True)
	report.checks.setdefault("terminates", True)
	report.checks.setdefault("mutation", True)
	report.details["path_lengths"] = lengths
	return report


def verify_endos(catalog: RootCatalog, facet: SupportTilting) -> VerificationReport:
	"""{q(T(i))} together with {u_i : i in sigma_T} is the multiset of all u_i."""
	algebra = catalog.algebra
	found = Counter(catalog[k].q for k in facet.members)
	found.update(algebra.symmetrizer[algebra.position(i)] for i in facet.sigma)
	expected = Counter(algebra.symmetrizer)
	report = VerificationReport(name="endos")
	report.record("multiset", found == expected, f"{sorted(found.elements())} != {sorted(expected.elements())}")
	return report


def verify_all_endos(complex_: ClusterComplex) -> VerificationReport:
	report = VerificationReport(name="endos")
	for facet in complex_.facets:
		report.absorb(verify_endos(complex_.catalog, facet), check="multiset")
	return report


def rank_two_algebra(r: int, s: int, u: int, v: int) -> AlgebraData:
	if r * u != s * v:
		raise SymmetrizabilityViolation(f"r*u = {r * u} but s*v = {s * v}")
	return build_algebra([[2, -r], [-s, 2]], [u, v], [(1, 2)], name=f"rank2(r={r},s={s},u={u},v={v})")


def _weighted(weights: Sequence[int], x: Vector) -> int:
	return sum(w * c for w, c in zip(weights, x))


def verify_total_order(
	r: int,
	s: int,
	u: int,
	v: int,
	t_max: int,
	weights: Sequence[int] | None = None,
) -> VerificationReport:
	"""d(2,t) sqrt(s) < d(1,t) sqrt(r) < d(2,t+1) sqrt(s) on preprojectives, and the dual chain on preinjectives.

	Raises:
		SymmetrizabilityViolation: r*u != s*v
		NotRepresentationInfinite: r*s <= 3
	"""
	algebra = rank_two_algebra(r, s, u, v)
	if r * s < 4:
		raise NotRepresentationInfinite(f"rs = {r * s} <= 3: the algebra has finite representation type")
	d = list(weights) if weights is not None else list(algebra.symmetrizer)
	if len(d) != 2 or any(w <= 0 for w in d):
		raise ValueError(f"Weights must be two positive integers, got {d}")
	catalog = rank2_sequences(algebra, t_max)
	scale = {1: r, 2: s}
	report = VerificationReport(name="total-order", details={"r": r, "s": s, "u": u, "v": v, "t_max": t_max, "weights": d})

	for component, order in ((Component.PREPROJECTIVE, (2, 1)), (Component.PREINJECTIVE, (1, 2))):
		chain = sorted(
			(x for x in catalog if x.component is component),
			key=lambda x: (x.t, order.index(x.vertex)),
		)
		side = component.value
		for left, right in zip(chain, chain[1:]):
			a = _weighted(d, left.dimv) ** 2 * scale[left.vertex]
			b = _weighted(d, right.dimv) ** 2 * scale[right.vertex]
			if not report.record(side, a < b, f"t={left.t}: {left.dimv} vs {right.dimv}"):
				report.details.setdefault("first_violation", {"side": side, "t": left.t})
				break
	return report


def verify_total_order_sweep(max_entry: int = 6, t_max: int = 30, random_weights: int = 5, seed: int = 0) -> VerificationReport:
	"""All (r, s) with rs >= 4 and entries up to max_entry, with u, v up to max_entry as well."""
	rng = random.Random(seed)
	report = VerificationReport(name="total-order-sweep")
	cases = 0
	for r in range(1, max_entry + 1):
		for s in range(1, max_entry + 1):
			if r * s < 4:
				continue
			for u in range(1, max_entry + 1):
				if (r * u) % s or not 1 <= r * u // s <= max_entry:
					continue
				v = r * u // s
				weight_sets: list[list[int] | None] = [None]
				weight_sets += [[rng.randint(1, 20), rng.randint(1, 20)] for _ in range(random_weights)]
				for weights in weight_sets:
					cases += 1
					report.absorb(verify_total_order(r, s, u, v, t_max, weights), check=f"r={r},s={s},u={u},v={v}")
	report.details["cases"] = cases
	return report


def _completions_rank_two(calculator: TiltingCalculator, x: Indec) -> tuple[int, int] | None:
	"""(Bongartz, dual Bongartz) complement of a sincere exceptional in rank 2."""
	catalog = calculator.catalog
	if catalog.kind is CatalogKind.FINITE:
		(b,) = calculator.bongartz([x.id]).ids
		(c,) = calculator.dual_bongartz([x.id]).ids
		return b, c
	chain = [y.id for y in catalog if y.component is x.component]
	k = chain.index(x.id)
	if k == 0 or k == len(chain) - 1:
		return None
	return chain[k - 1], chain[k + 1]


def verify_rank2_corollary(
	algebra: AlgebraData,
	t_max: int = 10,
	*,
	unit_endomorphisms: bool = False,
	only: Iterable[Sequence[int]] | None = None,
) -> VerificationReport:
	"""For every sincere exceptional T of a connected rank-2 algebra, min(mu(B), mu(C)) < mu(T).

	With unit_endomorphisms every q is taken to be 1, so mu is plain length.
	"""
	if algebra.n != 2:
		raise NotRankTwo(f"Expected a rank-2 algebra, got rank {algebra.n}")
	if component_count(algebra) != 1:
		raise Disconnected(f"{algebra!r} is a product of two rank-1 algebras")
	catalog = build_catalog(algebra, t_max)
	calculator = TiltingCalculator(HomExtOracle(catalog))
	wanted = {tuple(x) for x in only} if only is not None else None

	def measure(x: Indec) -> Mu:
		return Mu(length(algebra, x.dimv), 1 if unit_endomorphisms else x.q)

	report = VerificationReport(name="rank2-corollary", details={"kind": catalog.kind.value})
	checked = 0
	for x in catalog:
		if algebra.support(x.dimv) != algebra.vertices:
			continue
		if wanted is not None and x.dimv not in wanted:
			continue
		pair = _completions_rank_two(calculator, x)
		if pair is None:
			continue
		b, c = (catalog[k] for k in pair)
		checked += 1
		report.record(
			"smaller-neighbour",
			min(measure(b), measure(c)) < measure(x),
			f"T={x.dimv} mu^2={measure(x).squared}, B={b.dimv} mu^2={measure(b).squared}, C={c.dimv} mu^2={measure(c).squared}",
		)
	report.checks.setdefault("smaller-neighbour", True)
	report.details["checked"] = checked
	return report
