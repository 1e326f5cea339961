#!/usr/bin/env python3
"""Membership grid of the example's subfixed set on the slice x3 = 0.

Emits a CSV of 0/1 cells (rows sweep x2 from high to low, columns sweep x1
from low to high), ready for plotting with any external tool.
"""

import argparse
from fractions import Fraction

from tropcone.fixtures import example_graph
from tropcone.graph import subfixed


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lo", type=Fraction, default=Fraction(-9, 2))
    parser.add_argument("--hi", type=Fraction, default=Fraction(5, 2))
    parser.add_argument("--step", type=Fraction, default=Fraction(1, 4))
    parser.add_argument("--x3", type=Fraction, default=Fraction(0))
    args = parser.parse_args()

    g = example_graph()
    ticks = []
    v = args.lo
    while v <= args.hi:
        ticks.append(v)
        v += args.step
    for y in reversed(ticks):
        print(",".join("1" if subfixed(g, (x, y, args.x3)) else "0" for x in ticks))


if __name__ == "__main__":
    main()
