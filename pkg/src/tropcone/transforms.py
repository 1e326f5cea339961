"""Structural graph transformations with explicit witness maps.

Three stages turn an arbitrary valid game graph into one whose Random
vertices flip fair coins between two Max vertices:

* `zwick_paterson`: replaces arbitrary rational distributions by chains of
  fair coin flips (degree-one removal, degree lowering, binary gadget);
  preserves the encoded operator exactly.
* `first_transformation`: inserts a Min vertex after every Max out-edge and
  a Max vertex before every Min in-edge; the subfixed set of the input is
  the projection of the output's.
* `second_transformation`: splits one Random-to-Random edge with a fresh
  Max/Min pair.

`pipeline` composes the three and returns a composed witness map relating
the two subfixed sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import PreconditionViolated
from .graph import (
    Edge,
    GameGraph,
    absorption,
    max_vertex_value,
    require_valid,
    validate_graph,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class WitnessMap:
    """Explicit lift from source coordinates to target coordinates.

    `lift` is total on finite source points; `project` drops the auxiliary
    coordinates, so project(lift(x)) == x.
    """

    kind: str
    source_dim: int
    target_dim: int
    lift: Callable
    new_coords: tuple = ()

    def project(self, xp):
        return tuple(xp[: self.source_dim])

    def descriptor(self) -> dict:
        return {"kind": self.kind, "new_coords": list(self.new_coords)}


def identity_witness(n: int, kind: str = "pipeline") -> WitnessMap:
    return WitnessMap(kind=kind, source_dim=n, target_dim=n, lift=lambda x: tuple(x))


def compose_witnesses(first: WitnessMap, second: WitnessMap, kind: str = "pipeline") -> WitnessMap:
    if first.target_dim != second.source_dim:
        raise PreconditionViolated("witness maps do not compose")
    return WitnessMap(
        kind=kind,
        source_dim=first.source_dim,
        target_dim=second.target_dim,
        lift=lambda x: second.lift(first.lift(x)),
        new_coords=first.new_coords + second.new_coords,
    )


@dataclass(frozen=True)
class GadgetRecord:
    """Bookkeeping for one binary coin-flip gadget."""

    entry: int
    head_a: int
    head_b: int
    q: Fraction
    r: int
    new_vertices: tuple[int, ...]


class _Builder:
    """Mutable scratch copy of a graph with deterministic id allocation."""

    def __init__(self, g: GameGraph):
        self.min_vertices = list(g.min_vertices)
        self.max_vertices = list(g.max_vertices)
        self.random_vertices = list(g.random_vertices)
        self.edges = list(g.edges)
        self._next_vertex = g.next_vertex_id()
        self._next_edge = g.next_edge_id()

    def fresh_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        return v

    def add_edge(self, tail, head, payoff=None, prob=None) -> Edge:
        e = Edge(self._next_edge, tail, head, payoff=payoff, prob=prob)
        self._next_edge += 1
        self.edges.append(e)
        return e

    def out(self, v):
        return [e for e in self.edges if e.tail == v]

    def freeze(self) -> GameGraph:
        return GameGraph(
            tuple(self.min_vertices),
            tuple(self.max_vertices),
            tuple(self.random_vertices),
            tuple(self.edges),
        )


def _remove_degree_one_randoms(b: _Builder) -> None:
    while True:
        victim = None
        for v in b.random_vertices:
            if len(b.out(v)) == 1:
                victim = v
                break
        if victim is None:
            return
        (e,) = b.out(victim)
        b.random_vertices.remove(victim)
        b.edges = [
            f if f.head != victim else Edge(f.id, f.tail, e.head, f.payoff, f.prob)
            for f in b.edges
            if f.id != e.id
        ]


def _lower_degrees(b: _Builder) -> None:
    while True:
        victim = None
        for v in b.random_vertices:
            if len(b.out(v)) > 2:
                victim = v
                break
        if victim is None:
            return
        es = sorted(b.out(victim), key=lambda e: e.id)
        e1, rest = es[0], es[1:]
        q1 = e1.prob
        u = b.fresh_vertex()
        b.random_vertices.append(u)
        b.edges = [f for f in b.edges if f.tail != victim]
        b.add_edge(victim, e1.head, prob=q1)
        b.add_edge(victim, u, prob=1 - q1)
        for e in rest:
            b.add_edge(u, e.head, prob=e.prob / (1 - q1))


def _bits(value: int, r: int):
    return [(value >> s) & 1 for s in range(r + 1)]


def _install_gadget(b: _Builder, v: int) -> Optional[GadgetRecord]:
    es = sorted(b.out(v), key=lambda e: e.id)
    e1, e2 = es
    q = e1.prob
    if q == HALF:
        return None
    head_a, head_b = e1.head, e2.head
    a, bden = q.numerator, q.denominator
    r = bden.bit_length() - 1  # 2^r <= b < 2^(r+1)
    cs = _bits(a, r)
    ds = _bits(bden - a, r)

    tops = [v] + [b.fresh_vertex() for _ in range(r)]
    bottoms = [b.fresh_vertex() for _ in range(r + 1)]
    new_vertices = tops[1:] + bottoms
    b.random_vertices.extend(new_vertices)

    b.edges = [f for f in b.edges if f.id not in (e1.id, e2.id)]
    for t in range(r + 1):
        nxt = tops[t + 1] if t + 1 <= r else v
        b.add_edge(tops[t], bottoms[t], prob=HALF)
        b.add_edge(tops[t], nxt, prob=HALF)
        s = r - t
        b.add_edge(bottoms[t], head_a if cs[s] else v, prob=HALF)
        b.add_edge(bottoms[t], head_b if ds[s] else v, prob=HALF)
    return GadgetRecord(v, head_a, head_b, q, r, tuple(new_vertices))


def zwick_paterson_with_gadgets(g: GameGraph) -> tuple[GameGraph, tuple[GadgetRecord, ...]]:
    require_valid(g)
    b = _Builder(g)
    _remove_degree_one_randoms(b)
    _lower_degrees(b)
    records = []
    for v in list(b.random_vertices):
        rec = _install_gadget(b, v)
        if rec is not None:
            records.append(rec)
    out = b.freeze()
    require_valid(out)
    return out, tuple(records)


def zwick_paterson(g: GameGraph) -> GameGraph:
    """Normalize all Random vertices to fair coin flips; the encoded
    operator is unchanged."""
    return zwick_paterson_with_gadgets(g)[0]


def first_transformation(g: GameGraph) -> tuple[GameGraph, WitnessMap]:
    """Insert Min vertices after Max out-edges and Max vertices before Min
    in-edges. The new Min coordinates are indexed by the Max out-edges, in
    edge order, and the witness sets each to the expected value of the
    source coordinates under the absorption distribution."""
    require_valid(g)
    table = absorption(g)
    max_out = [e for e in g.edges if g.kind[e.tail] == "max"]
    min_headed = [e for e in g.edges if g.kind[e.head] == "min"]

    b = _Builder(g)
    mu = {}
    for e in max_out:
        mu[e.id] = b.fresh_vertex()
        b.min_vertices.append(mu[e.id])
    kappa = {}
    for f in min_headed:
        kappa[f.id] = b.fresh_vertex()
        b.max_vertices.append(kappa[f.id])

    zero = Fraction(0)
    new_edges = []
    for f in g.edges:
        if f.id in mu:
            # Max out-edge: tail -> mu -> (kappa ->) head.
            inner_head = kappa[f.id] if f.id in kappa else f.head
            new_edges.append((f.tail, f.head, f.payoff, None, "to-mu", f.id))
            new_edges.append((mu[f.id], inner_head, zero, None, None, None))
        elif f.id in kappa:
            # Random edge into a Min vertex: tail -> kappa -> head.
            new_edges.append((f.tail, kappa[f.id], None, f.prob, None, None))
        else:
            new_edges.append((f.tail, f.head, f.payoff, f.prob, None, None))
        if f.id in kappa:
            new_edges.append((kappa[f.id], f.head, zero, None, None, None))

    b.edges = []
    for tail, head, payoff, prob, tag, eid in new_edges:
        if tag == "to-mu":
            b.add_edge(tail, mu[eid], payoff=payoff)
        else:
            b.add_edge(tail, head, payoff=payoff, prob=prob)

    out = b.freeze()
    require_valid(out)

    n = g.n
    idx = g.min_index
    rows = [list(table.row(e.id).items()) for e in max_out]

    def lift(x):
        x = tuple(x)
        extra = []
        for row in rows:
            extra.append(sum((p * x[idx[v]] for v, p in row), Fraction(0)))
        return x + tuple(extra)

    witness = WitnessMap(
        kind="t1",
        source_dim=n,
        target_dim=n + len(max_out),
        lift=lift,
        new_coords=tuple(f"t1:{e.id}" for e in max_out),
    )
    return out, witness


def second_transformation(g: GameGraph, edge_id: int) -> tuple[GameGraph, WitnessMap]:
    """Split the Random-to-Random edge `edge_id` with a fresh Max/Min pair."""
    require_valid(g)
    e_star = g.edge_by_id(edge_id)
    if g.kind[e_star.tail] != "random" or g.kind[e_star.head] != "random":
        raise PreconditionViolated(f"edge {edge_id} does not join two Random vertices")
    for e in g.edges:
        if g.kind[e.tail] == "max" and g.kind[e.head] != "min":
            raise PreconditionViolated(
                f"Max out-edge {e.id} does not head a Min vertex"
            )

    b = _Builder(g)
    new_max = b.fresh_vertex()
    new_min = b.fresh_vertex()
    b.max_vertices.append(new_max)
    b.min_vertices.append(new_min)
    b.edges = [f for f in b.edges if f.id != edge_id]
    b.add_edge(e_star.tail, new_max, prob=e_star.prob)
    b.add_edge(new_max, new_min, payoff=Fraction(0))
    b.add_edge(new_min, e_star.head, payoff=Fraction(0))
    out = b.freeze()
    require_valid(out)

    # The new coordinate is the expected Max-vertex value seen from the head
    # of the split edge, taken in the source graph. This is a fixed point of
    # the new coordinate of the target operator even when random cycles pass
    # through the split edge.
    n = g.n
    idx = g.min_index
    table = absorption(g)
    row = list(table.row(edge_id).items())

    def lift(x):
        x = tuple(Fraction(v) for v in x)
        val = Fraction(0)
        for w, p in row:
            if g.kind[w] == "min":
                val += p * x[idx[w]]
            else:
                val += p * max_vertex_value(g, table, w, x)
        return x + (val,)

    witness = WitnessMap(
        kind="t2",
        source_dim=n,
        target_dim=n + 1,
        lift=lift,
        new_coords=(f"t2:{new_min}",),
    )
    return out, witness


def is_compliant(g: GameGraph) -> bool:
    """Every Random vertex flips a fair coin between two Max vertices."""
    if not validate_graph(g).ok:
        return False
    for v in g.random_vertices:
        out = g.out_edges[v]
        if len(out) != 2:
            return False
        if any(e.prob != HALF for e in out):
            return False
        if any(g.kind[e.head] != "max" for e in out):
            return False
    return True


def pipeline(g: GameGraph) -> tuple[GameGraph, WitnessMap]:
    """Zwick-Paterson, then the first transformation, then the second
    transformation on every Random-to-Random edge."""
    require_valid(g)
    if is_compliant(g):
        return g, identity_witness(g.n)

    current = zwick_paterson(g)
    witness = identity_witness(g.n, kind="zp")
    current, w1 = first_transformation(current)
    witness = compose_witnesses(witness, w1)
    while True:
        candidate = None
        for e in sorted(current.edges, key=lambda e: e.id):
            if current.kind[e.tail] == "random" and current.kind[e.head] == "random":
                candidate = e
                break
        if candidate is None:
            break
        current, w2 = second_transformation(current, candidate.id)
        witness = compose_witnesses(witness, w2)

    assert is_compliant(current)
    return current, witness
