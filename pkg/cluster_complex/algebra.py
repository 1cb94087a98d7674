"""Hereditary artin algebras encoded as symmetrizable Cartan data.

The algebra only exists through its numerical shadow: the Cartan matrix C,
the symmetrizer u (u_i is the length of End(S(i))) and an acyclic orientation.
Vertices are addressed by their 1-based labels everywhere in the public API;
restricted algebras keep the labels of the vertices that survive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx
from sympy import Matrix

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]

# Keyed by (algebra, vertex).
DIMV_CACHE_SIZE = 512


class ClusterComplexError(Exception):
	"""Base class for every error raised by the package."""


class InvalidAlgebra(ClusterComplexError):
	pass


class NotSymmetrizable(InvalidAlgebra):
	pass


class CyclicOrientation(InvalidAlgebra):
	pass


class ArrowWithoutEntry(InvalidAlgebra):
	pass


class DimensionMismatch(ClusterComplexError):
	pass


class NegativeCoordinate(ClusterComplexError):
	pass


class NonIntegralSolution(ClusterComplexError):
	pass


@dataclass(frozen=True)
class AlgebraData:
	"""Validated Cartan data plus the Euler form it induces.

	`arrows` holds label pairs (i, j) meaning <e_i, e_j> < 0, i.e.
	Ext^1(S(i), S(j)) != 0. `euler` is indexed by position, not by label.
	"""

	n: int
	cartan: tuple[tuple[int, ...], ...]
	symmetrizer: Vector
	arrows: frozenset[tuple[int, int]]
	euler: tuple[tuple[int, ...], ...]
	labels: Vector
	name: str = field(default="", compare=False)

	def position(self, label: int) -> int:
		try:
			return self.labels.index(label)
		except ValueError:
			raise InvalidAlgebra(f"Unknown vertex {label} (vertices: {list(self.labels)})") from None

	@property
	def vertices(self) -> frozenset[int]:
		return frozenset(self.labels)

	def unit(self, label: int) -> Vector:
		p = self.position(label)
		return tuple(1 if k == p else 0 for k in range(self.n))

	def zero(self) -> Vector:
		return (0,) * self.n

	def support(self, x: Sequence[int]) -> frozenset[int]:
		return frozenset(self.labels[k] for k, value in enumerate(x) if value != 0)

	def off_diagonal(self, i: int, j: int) -> tuple[int, int]:
		"""Return (r, s) = (-c_ij, -c_ji) for a pair of labels."""
		p, q = self.position(i), self.position(j)
		return -self.cartan[p][q], -self.cartan[q][p]

	def __repr__(self) -> str:
		title = self.name or "AlgebraData"
		return f"<{title}(n={self.n}, u={list(self.symmetrizer)}, arrows={sorted(self.arrows)})>"


def _euler_matrix(cartan: Sequence[Sequence[int]], symmetrizer: Sequence[int], arrows: Iterable[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
	n = len(symmetrizer)
	rows = [[0] * n for _ in range(n)]
	for k in range(n):
		rows[k][k] = symmetrizer[k]
	for p, q in arrows:
		# <e_i, e_j> = -m_ij with m_ij = -c_ij * u_i
		rows[p][q] = cartan[p][q] * symmetrizer[p]
	return tuple(tuple(row) for row in rows)


def build_algebra(
	cartan: Sequence[Sequence[int]],
	symmetrizer: Sequence[int],
	orientation: Iterable[Sequence[int]],
	*,
	name: str = "",
) -> AlgebraData:
	"""Validate Cartan data and compute its Euler form.

	Raises:
		InvalidAlgebra: shape, diagonal, sign or orientation coverage problems
		NotSymmetrizable: diag(u) * C is not symmetric
		CyclicOrientation: the arrows contain an oriented cycle
		ArrowWithoutEntry: an arrow (i, j) with c_ij = 0
	"""
	n = len(symmetrizer)
	if n < 1:
		raise InvalidAlgebra("An algebra needs at least one vertex")
	if len(cartan) != n or any(len(row) != n for row in cartan):
		raise InvalidAlgebra(f"Cartan matrix must be {n}x{n} to match the symmetrizer")
	c = tuple(tuple(int(v) for v in row) for row in cartan)
	u = tuple(int(v) for v in symmetrizer)
	for k in range(n):
		if c[k][k] != 2:
			raise InvalidAlgebra(f"Diagonal entry c_{k + 1}{k + 1} must be 2, got {c[k][k]}")
		if u[k] < 1:
			raise InvalidAlgebra(f"Symmetrizer entry u_{k + 1} must be positive, got {u[k]}")
	for p in range(n):
		for q in range(n):
			if p != q and c[p][q] > 0:
				raise InvalidAlgebra(f"Off-diagonal entry c_{p + 1}{q + 1} must be <= 0, got {c[p][q]}")
			if u[p] * c[p][q] != u[q] * c[q][p]:
				raise NotSymmetrizable(
					f"diag(u)*C is not symmetric at ({p + 1},{q + 1}): {u[p] * c[p][q]} != {u[q] * c[q][p]}"
				)

	arrows: set[tuple[int, int]] = set()
	for pair in orientation:
		if len(pair) != 2:
			raise InvalidAlgebra(f"Arrow must be a pair of vertices, got {pair!r}")
		i, j = int(pair[0]), int(pair[1])
		if not (1 <= i <= n and 1 <= j <= n) or i == j:
			raise InvalidAlgebra(f"Arrow ({i},{j}) does not join two distinct vertices of 1..{n}")
		if c[i - 1][j - 1] == 0:
			raise ArrowWithoutEntry(f"Arrow ({i},{j}) but c_{i}{j} = 0")
		arrows.add((i, j))

	for p in range(n):
		for q in range(p + 1, n):
			forward, backward = (p + 1, q + 1) in arrows, (q + 1, p + 1) in arrows
			if forward and backward:
				raise CyclicOrientation(f"Both ({p + 1},{q + 1}) and ({q + 1},{p + 1}) are arrows")
			if c[p][q] < 0 and not (forward or backward):
				raise InvalidAlgebra(f"c_{p + 1}{q + 1} < 0 but no arrow orients the edge {{{p + 1},{q + 1}}}")

	graph = nx.DiGraph()
	graph.add_nodes_from(range(1, n + 1))
	graph.add_edges_from(arrows)
	if not nx.is_directed_acyclic_graph(graph):
		raise CyclicOrientation(f"Orientation {sorted(arrows)} contains an oriented cycle")

	euler = _euler_matrix(c, u, [(i - 1, j - 1) for i, j in arrows])
	algebra = AlgebraData(
		n=n,
		cartan=c,
		symmetrizer=u,
		arrows=frozenset(arrows),
		euler=euler,
		labels=tuple(range(1, n + 1)),
		name=name,
	)
	logger.debug(f"Built {algebra!r} with Euler form {euler}")
	return algebra


def _check_dimension(algebra: AlgebraData, *vectors: Sequence[int]) -> None:
	for x in vectors:
		if len(x) != algebra.n:
			raise DimensionMismatch(f"Expected {algebra.n} coordinates, got {len(x)}: {tuple(x)}")


def euler_form(algebra: AlgebraData, x: Sequence[int], y: Sequence[int]) -> int:
	"""Return x^T E y."""
	_check_dimension(algebra, x, y)
	e = algebra.euler
	return sum(x[p] * e[p][q] * y[q] for p in range(algebra.n) if x[p] for q in range(algebra.n) if e[p][q])


def symmetric_form(algebra: AlgebraData, x: Sequence[int], y: Sequence[int]) -> int:
	"""B(x, y) = <x, y> + <y, x>, the form of diag(u) * C."""
	return euler_form(algebra, x, y) + euler_form(algebra, y, x)


def length(algebra: AlgebraData, x: Sequence[int]) -> int:
	"""Length over R: sum of u_i * x_i."""
	_check_dimension(algebra, x)
	if any(v < 0 for v in x):
		raise NegativeCoordinate(f"Length is only defined for dimension vectors, got {tuple(x)}")
	return sum(u * v for u, v in zip(algebra.symmetrizer, x))


def restrict(algebra: AlgebraData, sigma: Iterable[int]) -> AlgebraData:
	"""Delete the vertices in sigma (labels): the data of Lambda / (e_sigma)."""
	removed = frozenset(sigma)
	unknown = removed - algebra.vertices
	if unknown:
		raise InvalidAlgebra(f"Cannot restrict away unknown vertices {sorted(unknown)}")
	keep = [k for k, label in enumerate(algebra.labels) if label not in removed]
	cartan = tuple(tuple(algebra.cartan[p][q] for q in keep) for p in keep)
	euler = tuple(tuple(algebra.euler[p][q] for q in keep) for p in keep)
	return AlgebraData(
		n=len(keep),
		cartan=cartan,
		symmetrizer=tuple(algebra.symmetrizer[p] for p in keep),
		arrows=frozenset((i, j) for i, j in algebra.arrows if i not in removed and j not in removed),
		euler=euler,
		labels=tuple(algebra.labels[p] for p in keep),
		name=algebra.name,
	)


def component_count(algebra: AlgebraData) -> int:
	"""Number of connected components of the underlying valued graph."""
	graph = nx.Graph()
	graph.add_nodes_from(algebra.labels)
	graph.add_edges_from(algebra.arrows)
	return nx.number_connected_components(graph)


def _solve_unit(matrix: Matrix, algebra: AlgebraData, label: int, kind: str) -> Vector:
	p = algebra.position(label)
	rhs = Matrix([algebra.symmetrizer[p] if k == p else 0 for k in range(algebra.n)])
	solution = matrix.LUsolve(rhs)
	coords = []
	for value in solution:
		if not value.is_integer or value < 0:
			raise NonIntegralSolution(
				f"{kind} vector at vertex {label} is {list(solution)}; the algebra data is corrupted"
			)
		coords.append(int(value))
	return tuple(coords)


@lru_cache(maxsize=DIMV_CACHE_SIZE)
def projective_dimv(algebra: AlgebraData, i: int) -> Vector:
	"""dimv P(i): the unique p with <p, e_j> = delta_ij * u_i."""
	return _solve_unit(Matrix(algebra.euler).T, algebra, i, "Projective")


@lru_cache(maxsize=DIMV_CACHE_SIZE)
def injective_dimv(algebra: AlgebraData, i: int) -> Vector:
	"""dimv I(i): the unique q with <e_j, q> = delta_ij * u_i."""
	return _solve_unit(Matrix(algebra.euler), algebra, i, "Injective")
