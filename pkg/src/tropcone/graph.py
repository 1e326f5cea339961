"""Min/Random/Max game graphs and the monotone homogeneous operators they
encode.

A graph has three disjoint vertex classes. Edges out of Min and Max vertices
carry rational payoffs; edges out of Random vertices carry positive rational
probabilities summing to one per vertex. The encoded operator is computed
from exact absorption probabilities of the induced Markov chain in which
every Min and Max vertex is absorbing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    NonStochastic,
    SingularSystem,
    ValidationFailed,
)
from .exactlin import solve_rational
from .scalars import rational_from_str, rational_to_str

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    payoff: Optional[Fraction] = None
    prob: Optional[Fraction] = None


@dataclass(frozen=True, eq=False)
class GameGraph:
    """Immutable game graph. Min-vertex list order fixes the coordinate
    order of the encoded operator."""

    min_vertices: tuple[int, ...]
    max_vertices: tuple[int, ...]
    random_vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def kind(self) -> dict:
        kinds = {}
        for v in self.min_vertices:
            kinds[v] = "min"
        for v in self.max_vertices:
            kinds[v] = "max"
        for v in self.random_vertices:
            kinds[v] = "random"
        return kinds

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.kind}
        for e in self.edges:
            if e.tail in out:
                out[e.tail].append(e)
        return out

    @cached_property
    def min_index(self) -> dict:
        return {v: i for i, v in enumerate(self.min_vertices)}

    @property
    def n(self) -> int:
        return len(self.min_vertices)

    def next_vertex_id(self) -> int:
        return max(self.kind, default=0) + 1

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=0) + 1

    def edge_by_id(self, edge_id: int) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(f"no edge with id {edge_id}")

    def to_json(self) -> dict:
        return {
            "min": list(self.min_vertices),
            "max": list(self.max_vertices),
            "random": list(self.random_vertices),
            "edges": [
                {
                    "id": e.id,
                    "tail": e.tail,
                    "head": e.head,
                    "payoff": None if e.payoff is None else rational_to_str(e.payoff),
                    "prob": None if e.prob is None else rational_to_str(e.prob),
                }
                for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GameGraph":
        edges = tuple(
            Edge(
                id=int(e["id"]),
                tail=int(e["tail"]),
                head=int(e["head"]),
                payoff=None if e.get("payoff") is None else rational_from_str(e["payoff"]),
                prob=None if e.get("prob") is None else rational_from_str(e["prob"]),
            )
            for e in obj["edges"]
        )
        return cls(
            tuple(int(v) for v in obj["min"]),
            tuple(int(v) for v in obj["max"]),
            tuple(int(v) for v in obj["random"]),
            edges,
        )


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join(f"{code}: {msg}" for code, msg in self.failures)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [{"code": c, "message": m} for c, m in self.failures],
        }


def _random_reachable(g: GameGraph, start: int):
    """Vertices reachable from `start` by traversing edges whose tails are
    Random vertices (start's own out-edges are followed regardless)."""
    seen = set()
    stack = [e.head for e in g.out_edges[start]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        if g.kind.get(v) == "random":
            stack.extend(e.head for e in g.out_edges[v])
    return seen


def validate_graph(g: GameGraph) -> ValidationReport:
    """Check structural invariants and Assumption 1 (a), (b), (c)."""
    failures = []

    ids = list(g.min_vertices) + list(g.max_vertices) + list(g.random_vertices)
    if len(set(ids)) != len(ids):
        failures.append(("disjoint", "vertex classes are not disjoint"))
    if not g.min_vertices or not g.max_vertices:
        failures.append(("nonempty-classes", "Min and Max vertex sets must be nonempty"))

    for e in g.edges:
        if e.tail not in g.kind or e.head not in g.kind:
            failures.append(("edge-endpoints", f"edge {e.id} has an unknown endpoint"))
            continue
        if g.kind[e.tail] == "random":
            if e.prob is None or e.payoff is not None:
                failures.append(("edge-labels", f"edge {e.id} out of a Random vertex must carry a probability only"))
            elif e.prob <= 0:
                failures.append(("edge-labels", f"edge {e.id} has nonpositive probability"))
        else:
            if e.payoff is None or e.prob is not None:
                failures.append(("edge-labels", f"edge {e.id} out of a {g.kind[e.tail]} vertex must carry a payoff only"))

    for v in g.kind:
        if not g.out_edges[v]:
            failures.append(("out-degree", f"vertex {v} has no outgoing edge"))

    for v in g.random_vertices:
        total = sum((e.prob for e in g.out_edges[v] if e.prob is not None), Fraction(0))
        if total != 1:
            failures.append(("prob-sum", f"probabilities out of {v} sum to {total}"))

    if not failures:
        for v in g.min_vertices:
            reach = _random_reachable(g, v)
            if any(g.kind[w] == "min" for w in reach):
                failures.append(("min-min-path", f"a Max-free path joins Min vertex {v} to a Min vertex"))
        for v in g.max_vertices:
            reach = _random_reachable(g, v)
            if any(g.kind[w] == "max" for w in reach):
                failures.append(("max-max-path", f"a Min-free path joins Max vertex {v} to a Max vertex"))
        for v in g.random_vertices:
            reach = _random_reachable(g, v)
            if not any(g.kind[w] in ("min", "max") for w in reach):
                failures.append(("random-reach", f"no Min or Max vertex reachable from Random vertex {v}"))

    return ValidationReport(tuple(failures))


def require_valid(g: GameGraph) -> None:
    report = validate_graph(g)
    if not report.ok:
        raise ValidationFailed(report)


class AbsorptionTable:
    """Exact absorption probabilities p[e][v]: probability that the chain
    started at the head of edge e is absorbed in Min/Max vertex v."""

    def __init__(self, rows: dict):
        self._rows = rows  # edge id -> {vertex id: Fraction}

    def prob(self, edge_id: int, vertex: int) -> Fraction:
        return self._rows[edge_id].get(vertex, Fraction(0))

    def row(self, edge_id: int) -> dict:
        return self._rows[edge_id]


def _absorption_rows(g: GameGraph) -> dict:
    absorbing = list(g.min_vertices) + list(g.max_vertices)
    randoms = list(g.random_vertices)
    r_index = {v: i for i, v in enumerate(randoms)}

    # Hitting distribution from each random vertex, by one exact solve of
    # (I - Q) H = R over the random block.
    hit = {}
    if randoms:
        k = len(randoms)
        matrix = [[Fraction(0)] * k for _ in range(k)]
        rhs = [[Fraction(0)] * len(absorbing) for _ in range(k)]
        a_index = {v: i for i, v in enumerate(absorbing)}
        for v in randoms:
            i = r_index[v]
            matrix[i][i] += 1
            for e in g.out_edges[v]:
                if e.head in r_index:
                    matrix[i][r_index[e.head]] -= e.prob
                else:
                    rhs[i][a_index[e.head]] += e.prob
        try:
            sol = solve_rational(matrix, rhs)
        except SingularSystem as exc:
            raise SingularSystem(
                "absorption system is singular; a Random vertex cannot reach "
                "a Min or Max vertex"
            ) from exc
        for v in randoms:
            hit[v] = {w: sol[r_index[v]][j] for j, w in enumerate(absorbing) if sol[r_index[v]][j] != 0}

    rows = {}
    for e in g.edges:
        if e.head in r_index:
            rows[e.id] = dict(hit[e.head])
        else:
            rows[e.id] = {e.head: Fraction(1)}
    return rows


_ABSORPTION_CACHE: dict = {}


def absorption(g: GameGraph) -> AbsorptionTable:
    """Absorption table for a validated graph (cached per graph object)."""
    key = id(g)
    entry = _ABSORPTION_CACHE.get(key)
    if entry is None or entry[0] is not g:
        require_valid(g)
        entry = (g, AbsorptionTable(_absorption_rows(g)))
        _ABSORPTION_CACHE[key] = entry
    return entry[1]


def max_vertex_value(g: GameGraph, table: AbsorptionTable, w: int, x: Vector) -> Fraction:
    """max over Out(w) of (payoff + expected Min coordinate)."""
    idx = g.min_index
    best = None
    for e in g.out_edges[w]:
        val = e.payoff
        for u, p in table.row(e.id).items():
            val += p * x[idx[u]]
        if best is None or val > best:
            best = val
    return best


def eval_operator(g: GameGraph, x: Sequence[Fraction]) -> Vector:
    """The encoded operator F at a finite point x."""
    if len(x) != g.n:
        raise DimensionMismatch(f"point of length {len(x)}, graph has {g.n} Min vertices")
    x = tuple(Fraction(v) for v in x)
    table = absorption(g)
    max_vals = {w: max_vertex_value(g, table, w, x) for w in g.max_vertices}
    result = []
    for v in g.min_vertices:
        best = None
        for e in g.out_edges[v]:
            val = e.payoff
            for w, p in table.row(e.id).items():
                val += p * max_vals[w]
            if best is None or val < best:
                best = val
        result.append(best)
    return tuple(result)


def subfixed(g: GameGraph, x: Sequence[Fraction]) -> bool:
    """Does x <= F(x) hold coordinatewise?"""
    x = tuple(Fraction(v) for v in x)
    fx = eval_operator(g, x)
    return all(a <= b for a, b in zip(x, fx))


@dataclass(frozen=True, eq=False)
class MinMaxOperator:
    """The stochastic min-max form F_k(x) = min_i max_{s in S_ki} (A^(s)_k x + b^(s)_k).

    `matrices[s]` is row-stochastic, `offsets[s]` its payoff vector, and
    `subsets[k][i]` the (0-based) matrix indices S_ki.
    """

    n: int
    matrices: tuple[tuple[Vector, ...], ...]
    offsets: tuple[Vector, ...]
    subsets: tuple[tuple[tuple[int, ...], ...], ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "matrices": [
                [[rational_to_str(v) for v in row] for row in mat] for mat in self.matrices
            ],
            "offsets": [[rational_to_str(v) for v in b] for b in self.offsets],
            "subsets": [[list(s) for s in per_k] for per_k in self.subsets],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MinMaxOperator":
        return cls(
            n=int(obj["n"]),
            matrices=tuple(
                tuple(tuple(rational_from_str(v) for v in row) for row in mat)
                for mat in obj["matrices"]
            ),
            offsets=tuple(tuple(rational_from_str(v) for v in b) for b in obj["offsets"]),
            subsets=tuple(
                tuple(tuple(int(i) for i in s) for s in per_k) for per_k in obj["subsets"]
            ),
        )


@dataclass(frozen=True)
class StochasticReport:
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_stochastic(op: MinMaxOperator) -> StochasticReport:
    """Report nonnegativity and unit row sums of every matrix."""
    failures = []
    for s, mat in enumerate(op.matrices):
        for k, row in enumerate(mat):
            if any(v < 0 for v in row):
                failures.append(f"matrix {s} row {k} has a negative entry")
            if sum(row, Fraction(0)) != 1:
                failures.append(f"matrix {s} row {k} sums to {sum(row, Fraction(0))}")
    for k, per_k in enumerate(op.subsets):
        if not per_k:
            failures.append(f"coordinate {k} has no min-term")
        for i, s_ki in enumerate(per_k):
            if not s_ki:
                failures.append(f"subset S[{k}][{i}] is empty")
    return StochasticReport(tuple(failures))


def minmax_eval(op: MinMaxOperator, x: Sequence[Fraction]) -> Vector:
    """Direct exact evaluation of the min-max form."""
    if len(x) != op.n:
        raise DimensionMismatch(f"point of length {len(x)}, operator arity {op.n}")
    x = tuple(Fraction(v) for v in x)
    result = []
    for k in range(op.n):
        inner = []
        for s_ki in op.subsets[k]:
            inner.append(
                max(
                    sum((a * v for a, v in zip(op.matrices[s][k], x)), op.offsets[s][k])
                    for s in s_ki
                )
            )
        result.append(min(inner))
    return tuple(result)


def graph_from_minmax(op: MinMaxOperator) -> GameGraph:
    """Build a game graph encoding the min-max operator.

    Min vertices are the n coordinates; one Max vertex per (k, i) min-term;
    one Random vertex per (k, i, s) matrix choice, with an edge of
    probability A^(s)_{kl} to Min vertex l for every positive entry.
    """
    report = check_stochastic(op)
    if not report.ok:
        raise NonStochastic("; ".join(report.failures))

    n = op.n
    min_ids = list(range(1, n + 1))
    max_ids = []
    random_ids = []
    edges = []
    next_vertex = n + 1
    next_edge = 1

    for k in range(n):
        for i, s_ki in enumerate(op.subsets[k]):
            max_id = next_vertex
            next_vertex += 1
            max_ids.append(max_id)
            edges.append(Edge(next_edge, min_ids[k], max_id, payoff=Fraction(0)))
            next_edge += 1
            for s in s_ki:
                rand_id = next_vertex
                next_vertex += 1
                random_ids.append(rand_id)
                edges.append(Edge(next_edge, max_id, rand_id, payoff=op.offsets[s][k]))
                next_edge += 1
                for l in range(n):
                    if op.matrices[s][k][l] > 0:
                        edges.append(
                            Edge(next_edge, rand_id, min_ids[l], prob=op.matrices[s][k][l])
                        )
                        next_edge += 1

    g = GameGraph(tuple(min_ids), tuple(max_ids), tuple(random_ids), tuple(edges))
    require_valid(g)
    return g
