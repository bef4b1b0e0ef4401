#!/usr/bin/env python3
"""Tabulate additive and multiplicative atoms of the built-in semialgebras.

Prints, for each semialgebra, the atoms below a value cap together with the
completeness flag of the enumeration.  Useful to eyeball how the atom
structure changes across the nat / cyclic / conducted families.

Example:
    python3 scripts/atom_census.py --below 4
    python3 scripts/atom_census.py --below 6 -s nat -s conducted:3/2
"""

import argparse
from fractions import Fraction

from semifact import add_atoms, format_element, mult_atoms, parse_semialgebra
from semifact.semialgebras import Bounds

DEFAULT = ["nat", "qnn", "cyclic:2/3", "cyclic:3/2", "conducted:2", "conducted:1/2"]


def fmt(res, limit=12):
    shown = ", ".join(format_element(a) for a in res.items[:limit])
    more = f", ... ({len(res.items)} total)" if len(res.items) > limit else ""
    tag = "complete" if res.complete else "incomplete"
    return f"[{shown}{more}] ({tag})"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-s", "--semialgebra", action="append", dest="names")
    ap.add_argument("--below", default="4")
    ap.add_argument("--max-den", type=int, default=16)
    args = ap.parse_args()

    cap = Fraction(args.below)
    bounds = Bounds(max_den=args.max_den)
    for name in args.names or DEFAULT:
        S = parse_semialgebra(name)
        print(f"{S}")
        print(f"  additive       {fmt(add_atoms(S, bounds, below=cap))}")
        print(f"  multiplicative {fmt(mult_atoms(S, bounds, below=cap))}")


if __name__ == "__main__":
    main()
