"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the code paths under test: hull
membership by brute-force subset search, and linear programming by
exhaustive vertex enumeration over exact square solves.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from tropcone.convex import TropPointSet, cone_member
from tropcone.errors import SingularSystem
from tropcone.exactlin import solve_rational
from tropcone.graph import Edge, GameGraph, MinMaxOperator, graph_from_minmax, require_valid
from tropcone.scalars import Trop


def small_rational(rng: random.Random, box: int = 6, denom: int = 12) -> Fraction:
    q = rng.randint(1, denom)
    return Fraction(rng.randint(-box * q, box * q), q)


def stochastic_row(rng: random.Random, n: int, denom: int = 12):
    """A random nonnegative rational row summing to one, denominator <= denom."""
    d = rng.randint(1, denom)
    cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
    parts = []
    prev = 0
    for c in cuts + [d]:
        parts.append(Fraction(c - prev, d))
        prev = c
    rng.shuffle(parts)
    return tuple(parts)


def random_minmax(rng: random.Random) -> MinMaxOperator:
    n = rng.randint(2, 3)
    p = 2
    matrices = tuple(
        tuple(stochastic_row(rng, n) for _ in range(n)) for _ in range(p)
    )
    offsets = tuple(tuple(small_rational(rng) for _ in range(n)) for _ in range(p))
    subsets = []
    for _ in range(n):
        choice = rng.choice([((0,),), ((1,),), ((0, 1),), ((0,), (1,))])
        subsets.append(choice)
    return MinMaxOperator(n=n, matrices=matrices, offsets=offsets, subsets=tuple(subsets))


def random_valid_graph(rng: random.Random) -> GameGraph:
    """A valid game graph (<= 3 Min, <= 6 Max, <= 6 Random vertices) with
    edge denominators <= 12, built from a random stochastic min-max form."""
    g = graph_from_minmax(random_minmax(rng))
    require_valid(g)
    return g


def random_compliant_graph(rng: random.Random) -> GameGraph:
    """A graph in which every Random vertex flips a fair coin between two
    Max vertices, built directly."""
    n = rng.randint(2, 4)
    m = rng.randint(2, 4)
    mins = tuple(range(1, n + 1))
    maxs = tuple(range(101, 101 + m))
    randoms = []
    edges = []
    next_edge = 1
    next_random = 201

    for w in maxs:
        for _ in range(rng.randint(1, 3)):
            edges.append(Edge(next_edge, w, rng.choice(mins), payoff=small_rational(rng)))
            next_edge += 1
    for v in mins:
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.5:
                head = rng.choice(maxs)
            else:
                head = next_random
                next_random += 1
                randoms.append(head)
                w1, w2 = rng.sample(maxs, 2) if m >= 2 else (maxs[0], maxs[0])
                half = Fraction(1, 2)
                edges.append(Edge(next_edge, head, w1, prob=half))
                edges.append(Edge(next_edge + 1, head, w2, prob=half))
                next_edge += 2
            edges.append(Edge(next_edge, v, head, payoff=small_rational(rng)))
            next_edge += 1

    g = GameGraph(mins, maxs, tuple(randoms), tuple(edges))
    require_valid(g)
    return g


def hull_member_bruteforce(y, gens: TropPointSet) -> bool:
    """Hull membership via the Caratheodory bound: search over generator
    subsets of size at most n+1, deciding each by cone residuation on the
    homogenized subset."""
    n = gens.dimension
    zero = Trop(0)
    target = (zero,) + tuple(y)
    pts = gens.points
    for size in range(1, min(len(pts), n + 1) + 1):
        for subset in combinations(pts, size):
            cone = TropPointSet(n + 1, tuple((zero,) + tuple(g) for g in subset))
            if cone_member(target, cone):
                return True
    return False


def gadget_exit_probability(g, rec):
    """Probability that the chain started at a coin-flip gadget's entry
    leaves toward head_a, by an exact solve over the gadget's own vertices.

    Valid because every edge out of the gadget's vertices stays inside the
    gadget or exits to one of the two recorded heads."""
    states = [rec.entry, *rec.new_vertices]
    index = {s: i for i, s in enumerate(states)}
    k = len(states)
    mat = [[Fraction(0)] * k for _ in range(k)]
    rhs = [[Fraction(0)] for _ in range(k)]
    for s in states:
        i = index[s]
        mat[i][i] += 1
        for e in g.out_edges[s]:
            if e.head in index:
                mat[i][index[e.head]] -= e.prob
            elif e.head == rec.head_a:
                rhs[i][0] += e.prob
    sol = solve_rational(mat, rhs)
    return sol[index[rec.entry]][0]


def lp_max_oracle(a, b, x, k):
    """max{y_k : Ay <= b, y <= x} by enumerating basic points: the feasible
    region contains no line, so the optimum (if feasible) is at a vertex."""
    n = len(x)
    rows = [(tuple(row), bi) for row, bi in zip(a, b)]
    for i in range(n):
        unit = tuple(Fraction(int(j == i)) for j in range(n))
        rows.append((unit, Fraction(x[i])))
    best = None
    for subset in combinations(range(len(rows)), n):
        mat = [list(rows[i][0]) for i in subset]
        rhs = [[rows[i][1]] for i in subset]
        try:
            sol = solve_rational(mat, rhs)
        except SingularSystem:
            continue
        y = tuple(sol[i][0] for i in range(n))
        if all(
            sum(av * yv for av, yv in zip(row, y)) <= bi for row, bi in rows
        ):
            if best is None or y[k] > best:
                best = y[k]
    return best
