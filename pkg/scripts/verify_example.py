#!/usr/bin/env python3
"""End-to-end verification run on the example graph.

Transforms the graph into coin-flip form, synthesizes the cone pencil,
builds its affine envelope, and compares subfixed membership with lifted
pencil membership at sampled rational points.
"""

import argparse
import json

from tropcone.fixtures import example_graph
from tropcone.verify import verify_graph


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--box", type=int, default=10)
    parser.add_argument("--denom", type=int, default=64)
    args = parser.parse_args()

    report = verify_graph(
        example_graph(),
        samples=args.samples,
        seed=args.seed,
        box=args.box,
        denom=args.denom,
        instance="example",
    )
    print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    print(f"wall time: {report.wall_time:.2f} s")
    raise SystemExit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
