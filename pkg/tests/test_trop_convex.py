"""Cone and hull membership by residuation, against a brute-force oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import hull_member_bruteforce
from tropcone.convex import (
    TropPointSet,
    cone_member,
    hull_member,
    residual_coefficient,
    union_hull_member,
)
from tropcone.errors import DimensionMismatch
from tropcone.sampling import rng_for, sample_trop_vector
from tropcone.scalars import NEG_INF, Trop, tadd, tmul

T = Trop
Z = Trop(0)


def pts(*rows):
    return TropPointSet(len(rows[0]), tuple(tuple(T(c) if c is not None else NEG_INF for c in r) for r in rows))


class TestResiduation:
    def test_generator_is_member(self):
        g = pts((1, 2), (0, 5))
        for p in g.points:
            assert cone_member(p, g)

    def test_diagonal_point_not_in_single_ray(self):
        assert not cone_member((Z, T(1)), pts((0, 0)))

    def test_axes_span_positive_orthant(self):
        g = pts((0, None), (None, 0))
        assert cone_member((T(5), T(7)), g)
        assert residual_coefficient((T(5), T(7)), g.points[0]) == T(5)

    def test_neg_inf_generator_inert(self):
        g = TropPointSet(2, ((NEG_INF, NEG_INF), (Z, Z)))
        assert cone_member((T(3), T(3)), g)
        assert not cone_member((T(3), T(4)), g)

    def test_scale_invariance_of_generators(self):
        g1 = pts((0, 1), (2, 0))
        g2 = pts((5, 6), (-1, -3))
        rng = rng_for(11, 0)
        for i in range(40):
            y = sample_trop_vector(rng_for(11, i), 2, 6, 8)
            assert cone_member(y, g1) == cone_member(y, g2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            cone_member((Z,), pts((0, 0)))
        with pytest.raises(DimensionMismatch):
            TropPointSet(2, ((Z,),))


class TestHull:
    def test_generator_is_member(self):
        g = pts((0, 0), (2, 2))
        assert hull_member((Z, Z), g)

    def test_segment_interior(self):
        assert hull_member((T(1), T(1)), pts((0, 0), (2, 2)))

    def test_off_segment(self):
        assert not hull_member((Z, T(2)), pts((0, 0), (2, 2)))

    def test_union_wrapper(self):
        g1, g2 = pts((0, 0)), pts((2, 2))
        assert union_hull_member((T(1), T(1)), g1, g2)
        assert not union_hull_member((Z, T(2)), g1, g2)
        assert union_hull_member((Z, Z), pts((0, None)), pts((None, 0)))

    def test_closure_under_combinations(self):
        g = pts((0, 3, -1), (2, 0, 0), (None, 1, 4))
        for i in range(60):
            rng = rng_for(23, i)
            x = g.points[rng.randrange(3)]
            y = g.points[rng.randrange(3)]
            mu = Trop(-abs(Fraction(rng.randint(0, 40), rng.randint(1, 8))))
            lam = Z
            if rng.random() < 0.5:
                lam, mu = mu, lam
            z = tuple(tadd(tmul(lam, a), tmul(mu, b)) for a, b in zip(x, y))
            assert hull_member(z, g)


class TestCaratheodoryOracle:
    def test_agrees_with_subset_search(self):
        for trial in range(8):
            rng = rng_for(31, trial)
            gens = TropPointSet(
                3,
                tuple(sample_trop_vector(rng, 3, 5, 6, 0.25) for _ in range(rng.randint(1, 5))),
            )
            for i in range(25):
                y = sample_trop_vector(rng_for(37 + trial, i), 3, 5, 6, 0.3)
                assert hull_member(y, gens) == hull_member_bruteforce(y, gens)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 5))
    def test_members_need_few_generators(self, seed, count):
        rng = rng_for(seed, count)
        gens = TropPointSet(
            2, tuple(sample_trop_vector(rng, 2, 5, 4, 0.2) for _ in range(count))
        )
        y = sample_trop_vector(rng, 2, 5, 4, 0.2)
        assert hull_member(y, gens) == hull_member_bruteforce(y, gens)
