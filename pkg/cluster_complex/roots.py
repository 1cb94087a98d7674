"""Catalogs of exceptional dimension vectors (positive real roots)."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from sympy import Matrix

from cluster_complex.algebra import (
	AlgebraData,
	ClusterComplexError,
	Vector,
	euler_form,
	injective_dimv,
	length,
	projective_dimv,
	restrict,
)

logger = logging.getLogger(__name__)

DEFAULT_ROOT_BOUND = 1_000_000


class NotFiniteType(ClusterComplexError):
	pass


class NotRankTwo(ClusterComplexError):
	pass


class RootBoundExceeded(ClusterComplexError):
	pass


class UnsupportedAlgebra(ClusterComplexError):
	pass


class CatalogKind(str, Enum):
	FINITE = "FiniteType"
	RANK_TWO_INFINITE = "RankTwoInfinite"
	UNSUPPORTED = "Unsupported"


class Component(str, Enum):
	PREPROJECTIVE = "preproj"
	PREINJECTIVE = "preinj"


@dataclass(frozen=True)
class Indec:
	"""Numerical surrogate of an exceptional module.

	For rank-2 catalogs `component`, `t` and `vertex` say that the module is
	tau^{-t} P(vertex) (preprojective) or tau^{t} I(vertex) (preinjective).
	"""

	id: int
	dimv: Vector
	q: int
	component: Component | None = None
	t: int | None = None
	vertex: int | None = None

	def label(self) -> str:
		return "(" + ",".join(str(v) for v in self.dimv) + ")"


@dataclass(frozen=True)
class RootCatalog:
	kind: CatalogKind
	algebra: AlgebraData
	roots: tuple[Indec, ...]
	cutoff: int | None = None

	def __len__(self) -> int:
		return len(self.roots)

	def __iter__(self) -> Iterator[Indec]:
		return iter(self.roots)

	def __getitem__(self, index: int) -> Indec:
		return self.roots[index]

	def dimension_vectors(self) -> list[Vector]:
		return [x.dimv for x in self.roots]

	def find(self, dimv: Sequence[int]) -> Indec:
		key = tuple(dimv)
		for x in self.roots:
			if x.dimv == key:
				return x
		raise KeyError(f"{key} is not in the catalog")

	def restrict(self, sigma: frozenset[int]) -> tuple[RootCatalog, dict[int, int]]:
		"""Catalog of Lambda_sigma: members vanishing on sigma, coordinates projected.

		Returns the restricted catalog and a map from its ids to the ids here.
		"""
		sub_algebra = restrict(self.algebra, sigma)
		keep = [k for k, label in enumerate(self.algebra.labels) if label not in sigma]
		dropped = [k for k, label in enumerate(self.algebra.labels) if label in sigma]
		members: list[Indec] = []
		id_map: dict[int, int] = {}
		for x in self.roots:
			if any(x.dimv[k] for k in dropped):
				continue
			id_map[len(members)] = x.id
			members.append(
				Indec(
					id=len(members),
					dimv=tuple(x.dimv[k] for k in keep),
					q=x.q,
					component=x.component,
					t=x.t,
					vertex=x.vertex,
				)
			)
		kind = classify_type(sub_algebra)
		if kind is CatalogKind.UNSUPPORTED:
			kind = self.kind
		return RootCatalog(kind=kind, algebra=sub_algebra, roots=tuple(members), cutoff=self.cutoff), id_map


def simple_reflection(algebra: AlgebraData, i: int, x: Sequence[int]) -> Vector:
	"""s_i(x) = x - (sum_j c_ij x_j) e_i."""
	p = algebra.position(i)
	shift = sum(c * v for c, v in zip(algebra.cartan[p], x))
	return tuple(v - shift if k == p else v for k, v in enumerate(x))


def _leading_minors_positive(matrix: Matrix) -> bool:
	return all(matrix[:k, :k].det() > 0 for k in range(1, matrix.rows + 1))


def classify_type(algebra: AlgebraData) -> CatalogKind:
	"""FiniteType iff diag(u) * C is positive definite; rank-2 infinite iff rs >= 4."""
	if algebra.n == 0:
		return CatalogKind.FINITE
	symmetrized = Matrix(algebra.n, algebra.n, lambda p, q: algebra.symmetrizer[p] * algebra.cartan[p][q])
	if _leading_minors_positive(symmetrized):
		return CatalogKind.FINITE
	if algebra.n == 2:
		r, s = algebra.off_diagonal(algebra.labels[0], algebra.labels[1])
		if r * s >= 4:
			return CatalogKind.RANK_TWO_INFINITE
	return CatalogKind.UNSUPPORTED


def _is_positive(x: Sequence[int]) -> bool:
	return all(v >= 0 for v in x) and any(v > 0 for v in x)


def _check_real_root(algebra: AlgebraData, dimv: Vector, expected_q: int) -> int:
	q = euler_form(algebra, dimv, dimv)
	if q != expected_q:
		raise ClusterComplexError(f"Root {dimv} has <a,a> = {q}, expected {expected_q}")
	return q


def positive_roots(algebra: AlgebraData, bound: int = DEFAULT_ROOT_BOUND) -> RootCatalog:
	"""All positive roots, by reflection closure of the simple roots.

	Raises:
		NotFiniteType: the algebra is not of finite type
		RootBoundExceeded: more than `bound` vectors were generated
	"""
	if classify_type(algebra) is not CatalogKind.FINITE:
		raise NotFiniteType(f"{algebra!r} is not of finite type")

	# Every root remembers the simple root whose orbit it lies in, so q can be checked.
	origin: dict[Vector, int] = {}
	queue: deque[Vector] = deque()
	for label in algebra.labels:
		e = algebra.unit(label)
		origin[e] = algebra.symmetrizer[algebra.position(label)]
		queue.append(e)
	while queue:
		x = queue.popleft()
		for label in algebra.labels:
			y = simple_reflection(algebra, label, x)
			if y in origin or not _is_positive(y):
				continue
			origin[y] = origin[x]
			if len(origin) > bound:
				raise RootBoundExceeded(f"More than {bound} roots generated for {algebra!r}")
			queue.append(y)

	ordered = sorted(origin, key=lambda x: (length(algebra, x), x))
	roots = tuple(
		Indec(id=k, dimv=x, q=_check_real_root(algebra, x, origin[x]))
		for k, x in enumerate(ordered)
	)
	logger.info(f"Generated {len(roots)} positive roots for {algebra!r}")
	return RootCatalog(kind=CatalogKind.FINITE, algebra=algebra, roots=roots)


def rank_two_roles(algebra: AlgebraData) -> tuple[int, int, int, int]:
	"""Return (a, b, r, s): a plays vertex 1 (arrow tail), b plays vertex 2 with P(b) simple."""
	if algebra.n != 2:
		raise NotRankTwo(f"Expected a rank-2 algebra, got rank {algebra.n}")
	if algebra.arrows:
		(a, b), = algebra.arrows
	else:
		a, b = algebra.labels
	r, s = algebra.off_diagonal(a, b)
	return a, b, r, s


def _combine(k: int, x: Vector, y: Vector) -> Vector:
	return tuple(k * p - q for p, q in zip(x, y))


def rank2_sequences(algebra: AlgebraData, t_max: int) -> RootCatalog:
	"""Preprojective and preinjective roots tau^{-t}P(i), tau^{t}I(i) for t <= t_max.

	Uses d(2,t+1) = r d(1,t) - d(2,t) and d(1,t+1) = s d(2,t+1) - d(1,t) on the
	preprojective side and e(1,t+1) = s e(2,t) - e(1,t),
	e(2,t+1) = r e(1,t+1) - e(2,t) on the preinjective side. A family stops at
	the first non-positive vector, which only happens in finite type.
	"""
	a, b, r, s = rank_two_roles(algebra)
	if t_max < 0:
		raise ValueError(f"t_max must be non-negative, got {t_max}")
	kind = classify_type(algebra)
	u_a, u_b = (algebra.symmetrizer[algebra.position(v)] for v in (a, b))

	preprojective: list[tuple[Vector, int, int, int]] = []
	d2, d1 = projective_dimv(algebra, b), projective_dimv(algebra, a)
	for t in range(t_max + 1):
		if t > 0:
			d2 = _combine(r, d1, d2)
			if not _is_positive(d2):
				break
			preprojective.append((d2, t, b, u_b))
			d1 = _combine(s, d2, d1)
		else:
			preprojective.append((d2, t, b, u_b))
		if not _is_positive(d1):
			break
		preprojective.append((d1, t, a, u_a))

	preinjective: list[tuple[Vector, int, int, int]] = []
	e1, e2 = injective_dimv(algebra, a), injective_dimv(algebra, b)
	for t in range(t_max + 1):
		if t > 0:
			e1 = _combine(s, e2, e1)
			if not _is_positive(e1):
				break
			preinjective.append((e1, t, a, u_a))
			e2 = _combine(r, e1, e2)
		else:
			preinjective.append((e1, t, a, u_a))
		if not _is_positive(e2):
			break
		preinjective.append((e2, t, b, u_b))

	# AR order: preprojectives left to right, then preinjectives ending at I(1).
	preinjective.reverse()
	members: list[Indec] = []
	seen: set[Vector] = set()
	for component, family in ((Component.PREPROJECTIVE, preprojective), (Component.PREINJECTIVE, preinjective)):
		for dimv, t, vertex, expected_q in family:
			if dimv in seen:
				if kind is CatalogKind.RANK_TWO_INFINITE:
					raise ClusterComplexError(f"Preprojective and preinjective roots meet at {dimv} in infinite type")
				continue
			seen.add(dimv)
			members.append(
				Indec(
					id=len(members),
					dimv=dimv,
					q=_check_real_root(algebra, dimv, expected_q),
					component=component,
					t=t,
					vertex=vertex,
				)
			)
	logger.info(f"Generated {len(members)} rank-2 roots up to t={t_max} for {algebra!r} ({kind.value})")
	return RootCatalog(kind=kind, algebra=algebra, roots=tuple(members), cutoff=t_max)


def build_catalog(algebra: AlgebraData, t_max: int, bound: int = DEFAULT_ROOT_BOUND) -> RootCatalog:
	"""Finite type: all positive roots; rank-2 infinite: the AR window up to t_max."""
	kind = classify_type(algebra)
	if kind is CatalogKind.FINITE:
		return positive_roots(algebra, bound=bound)
	if kind is CatalogKind.RANK_TWO_INFINITE:
		return rank2_sequences(algebra, t_max)
	raise UnsupportedAlgebra(f"{algebra!r} is neither of finite type nor rank-2 representation-infinite")
