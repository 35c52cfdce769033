"""Enumerate floor or pearl diagrams and print their multiplicities.

Usage:
  python3 scripts/enumerate_diagrams.py floor --g 2 --a 2 --w 2,-1,-1
  python3 scripts/enumerate_diagrams.py pearl --g 2 --B 2,2 --mode lambda
"""

import argparse

from covercount.diagrams import (
    enumerate_floor_diagrams,
    enumerate_pearl_diagrams,
    floor_multiplicity,
    pearl_multiplicity,
)
from covercount.group_algebra import GroupElement


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("which", choices=("floor", "pearl"))
    parser.add_argument("--g", type=int, required=True)
    parser.add_argument("--a", type=int)
    parser.add_argument("--w", type=str)
    parser.add_argument("--B", type=str)
    parser.add_argument("--g0", type=int)
    parser.add_argument("--mode", choices=("points", "lambda"),
                        default="points")
    args = parser.parse_args()

    if args.which == "floor":
        w = tuple(int(x) for x in args.w.split(","))
        out = enumerate_floor_diagrams(args.g, args.a, w, g0=args.g0)
        mult = lambda d: floor_multiplicity(d, mode=args.mode)
    else:
        B = tuple(int(x) for x in args.B.split(","))
        out = enumerate_pearl_diagrams(args.g, B, g0=args.g0)
        mult = lambda d: pearl_multiplicity(d, mode=args.mode)

    total = GroupElement.zero()
    for i, d in enumerate(out):
        m = mult(d)
        total = total + m
        print(f"[{i}] kinds={d.kinds} a={d.a} g={d.g} edges={d.edges}")
        print(f"    multiplicity: {m}")
    print(f"{len(out)} diagrams, assembled invariant: {total}")


if __name__ == "__main__":
    main()
