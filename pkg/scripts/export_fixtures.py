#!/usr/bin/env python3
"""Write the running example's three descriptions to JSON files.

Produces example_graph.json, example_minmax.json, and example_union.json in
the chosen directory; these are the inputs used by the other scripts and by
the CLI walkthrough in the README.
"""

import argparse
import json
from pathlib import Path

from tropcone.fixtures import example_graph, example_minmax, example_union


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default="fixtures", help="output directory")
    args = parser.parse_args()

    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, obj in (
        ("example_graph", example_graph().to_json()),
        ("example_minmax", example_minmax().to_json()),
        ("example_union", example_union().to_json()),
    ):
        path = out / f"{name}.json"
        path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        print(path)


if __name__ == "__main__":
    main()
