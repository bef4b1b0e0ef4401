#!/usr/bin/env python3
"""Explore ascending divisibility chains interactively.

Walks the probe over a grid of starting elements and prints any chain found,
making it easy to see which semialgebras fail the ascending chain condition
on principal ideals and where the chains come from.

Example:
    python3 scripts/explore_accp.py -s cyclic:2/3 --depth 8
    python3 scripts/explore_accp.py -s conducted:2 --mode add --depth 6
"""

import argparse
from fractions import Fraction

from semifact import accp_probe, contains, format_element, parse_semialgebra
from semifact.errors import Inconclusive


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-s", "--semialgebra", default="cyclic:2/3")
    ap.add_argument("--mode", choices=["add", "mult"], default="add")
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument(
        "--starts",
        default="1,2,3,4/3,9/2",
        help="comma separated starting elements",
    )
    args = ap.parse_args()

    S = parse_semialgebra(args.semialgebra)
    found = 0
    for text in args.starts.split(","):
        x = Fraction(text)
        if not contains(S, x) or x == 0:
            print(f"{text}: skipped (not a nonzero member of {S})")
            continue
        try:
            got = accp_probe(S, args.mode, x, args.depth)
        except Inconclusive as e:
            print(f"{text}: inconclusive ({e})")
            continue
        if got is None:
            print(f"{text}: no descending-divisor chain of depth {args.depth}")
            continue
        found += 1
        chain = " > ".join(format_element(v) for v in got.chain)
        print(f"{text}: chain {chain}")
        print(f"     cofactors {[format_element(v) for v in got.cofactors]}")
    print(f"\n{found} chain(s) found in {S} ({args.mode})")


if __name__ == "__main__":
    main()
