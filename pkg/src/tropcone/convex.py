"""Membership in finitely generated tropical cones and convex hulls.

Membership is decided by residuation: for each generator, the largest
admissible scaling is computed coordinatewise, and the point belongs to the
cone iff the resulting combination reproduces it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch
from .scalars import NEG_INF, Trop, tadd, tmul

Point = tuple[Trop, ...]


@dataclass(frozen=True)
class TropPointSet:
    """A finite list of points in T^n, used as hull/cone generators."""

    dimension: int
    points: tuple[Point, ...]

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.dimension:
                raise DimensionMismatch(
                    f"point of length {len(p)} in a {self.dimension}-dimensional set"
                )

    def to_json(self):
        return [[c.to_str() for c in p] for p in self.points]

    @classmethod
    def from_json(cls, obj, dimension=None):
        pts = tuple(tuple(Trop.from_str(c) for c in row) for row in obj)
        if dimension is None:
            if not pts:
                raise DimensionMismatch("cannot infer dimension of an empty set")
            dimension = len(pts[0])
        return cls(dimension, pts)


def residual_coefficient(y: Point, g: Point) -> Trop:
    """Largest lam with lam + g <= y coordinatewise; -inf-only generators
    are inert and get coefficient -inf."""
    lam = None
    for yi, gi in zip(y, g):
        if gi.is_neg_inf:
            continue
        if yi.is_neg_inf:
            return NEG_INF
        cand = Trop(yi.finite - gi.finite)
        if lam is None or cand < lam:
            lam = cand
    return NEG_INF if lam is None else lam


def residual_combination(y: Point, gens: Sequence[Point]) -> tuple[tuple[Trop, ...], Point]:
    """Residuation coefficients and the induced combination max_k(lam_k + g_k)."""
    lams = tuple(residual_coefficient(y, g) for g in gens)
    combo = tuple(NEG_INF for _ in y)
    for lam, g in zip(lams, gens):
        combo = tuple(tadd(c, tmul(lam, gi)) for c, gi in zip(combo, g))
    return lams, combo


def cone_member(y: Point, generators: TropPointSet) -> bool:
    """Is y a tropical combination of the generators?"""
    if len(y) != generators.dimension:
        raise DimensionMismatch(
            f"point of length {len(y)} against dimension {generators.dimension}"
        )
    _, combo = residual_combination(y, generators.points)
    return combo == tuple(y)


def _homogenize(points) -> tuple[Point, ...]:
    zero = Trop(0)
    return tuple((zero,) + tuple(p) for p in points)


def hull_member(y: Point, generators: TropPointSet) -> bool:
    """Is y in the tropical convex hull of the generators?

    Reduces to cone membership of (0, y) over the homogenized generators.
    """
    if len(y) != generators.dimension:
        raise DimensionMismatch(
            f"point of length {len(y)} against dimension {generators.dimension}"
        )
    cone = TropPointSet(generators.dimension + 1, _homogenize(generators.points))
    return cone_member((Trop(0),) + tuple(y), cone)


def union_hull_member(y: Point, g1: TropPointSet, g2: TropPointSet) -> bool:
    """Is y in tconv(G1 union G2)?"""
    if g1.dimension != g2.dimension:
        raise DimensionMismatch("generator sets of different dimensions")
    combined = TropPointSet(g1.dimension, g1.points + g2.points)
    return hull_member(y, combined)
