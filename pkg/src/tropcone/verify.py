"""End-to-end verification: pipeline, synthesis, envelope, and sampled
equivalence between the subfixed set and the lifted pencil membership."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .graph import GameGraph, require_valid, subfixed
from .pencil import MetzlerPencil, affine_envelope, pencil_member, synthesize_cone
from .sampling import rng_for, sample_vector
from .transforms import WitnessMap, pipeline


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    samples: int
    subfixed_count: int
    forward_agreements: int
    complement_count: int
    backward_agreements: int
    counterexample: Optional[tuple]
    wall_time: float

    @property
    def ok(self) -> bool:
        return (
            self.forward_agreements == self.subfixed_count
            and self.backward_agreements == self.complement_count
        )

    def to_json(self) -> dict:
        # Wall time is intentionally left out so that identical inputs give
        # byte-identical serialized reports.
        return {
            "instance": self.instance,
            "samples": self.samples,
            "subfixed": self.subfixed_count,
            "forward_agreements": self.forward_agreements,
            "complement": self.complement_count,
            "backward_agreements": self.backward_agreements,
            "ok": self.ok,
            "counterexample": None
            if self.counterexample is None
            else [str(v) for v in self.counterexample],
        }


def envelope_lift(witness: WitnessMap, x):
    """Member of the affine envelope corresponding to a subfixed x: the
    pipeline lift followed by its coordinatewise negation."""
    lifted = witness.lift(x)
    return lifted + tuple(-v for v in lifted)


def verify_graph(
    g: GameGraph,
    samples: int = 200,
    seed: int = 0,
    box: int = 10,
    denom: int = 64,
    instance: str = "graph",
    pencil_override: Optional[MetzlerPencil] = None,
) -> VerificationReport:
    """Check subfixed(g, x) <=> membership of the envelope-lifted point, at
    `samples` deterministic rational points.

    `pencil_override` substitutes the envelope pencil (used to confirm that
    corrupted pencils are caught)."""
    start = time.monotonic()
    require_valid(g)
    target, witness = pipeline(g)
    envelope = affine_envelope(synthesize_cone(target))
    if pencil_override is not None:
        envelope = pencil_override

    n = g.n
    sub_count = fwd = comp_count = bwd = 0
    counterexample = None
    for i in range(samples):
        x = sample_vector(rng_for(seed, i), n, box, denom)
        left = subfixed(g, x)
        right = pencil_member(envelope, envelope_lift(witness, x))
        if left:
            sub_count += 1
            if right:
                fwd += 1
        else:
            comp_count += 1
            if not right:
                bwd += 1
        if left != right and counterexample is None:
            counterexample = x
    return VerificationReport(
        instance=instance,
        samples=samples,
        subfixed_count=sub_count,
        forward_agreements=fwd,
        complement_count=comp_count,
        backward_agreements=bwd,
        counterexample=counterexample,
        wall_time=time.monotonic() - start,
    )
