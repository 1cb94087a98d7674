"""Bundled algebras, named by Cartan type (plus symmetrizer where it matters)."""

from __future__ import annotations

from cluster_complex.algebra import AlgebraData
from cluster_complex.config import AlgebraSpec

FIXTURES: dict[str, AlgebraSpec] = {
	"A1": AlgebraSpec(n=1, cartan=[[2]], symmetrizer=[1], name="A1"),
	"A1xA1": AlgebraSpec(n=2, cartan=[[2, 0], [0, 2]], symmetrizer=[1, 1], name="A1xA1"),
	"A2": AlgebraSpec(n=2, cartan=[[2, -1], [-1, 2]], symmetrizer=[1, 1], arrows=[(1, 2)], name="A2"),
	"A3": AlgebraSpec(
		n=3,
		cartan=[[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
		symmetrizer=[1, 1, 1],
		arrows=[(1, 2), (2, 3)],
		name="A3",
	),
	"B2": AlgebraSpec(n=2, cartan=[[2, -2], [-1, 2]], symmetrizer=[1, 2], arrows=[(1, 2)], name="B2"),
	"B3": AlgebraSpec(
		n=3,
		cartan=[[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
		symmetrizer=[2, 2, 1],
		arrows=[(1, 2), (2, 3)],
		name="B3",
	),
	"C3": AlgebraSpec(
		n=3,
		cartan=[[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
		symmetrizer=[1, 1, 2],
		arrows=[(1, 2), (2, 3)],
		name="C3",
	),
	"D4": AlgebraSpec(
		n=4,
		cartan=[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
		symmetrizer=[1, 1, 1, 1],
		arrows=[(1, 2), (2, 3), (2, 4)],
		name="D4",
	),
	"G2": AlgebraSpec(n=2, cartan=[[2, -1], [-3, 2]], symmetrizer=[3, 1], arrows=[(1, 2)], name="G2"),
	"Kronecker": AlgebraSpec(n=2, cartan=[[2, -2], [-2, 2]], symmetrizer=[1, 1], arrows=[(1, 2)], name="Kronecker"),
	"rank2-1-5": AlgebraSpec(n=2, cartan=[[2, -1], [-5, 2]], symmetrizer=[5, 1], arrows=[(1, 2)], name="rank2-1-5"),
	"affine-A2": AlgebraSpec(
		n=3,
		cartan=[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
		symmetrizer=[1, 1, 1],
		arrows=[(1, 2), (2, 3), (1, 3)],
		name="affine-A2",
	),
}

FINITE_TYPE = ("A1", "A1xA1", "A2", "A3", "B2", "B3", "C3", "D4", "G2")
RANK_TWO_INFINITE = ("Kronecker", "rank2-1-5")


def get_fixture(name: str) -> AlgebraData:
	try:
		spec = FIXTURES[name]
	except KeyError:
		raise KeyError(f"Unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None
	return spec.build()
