#!/usr/bin/env python3
"""Sweep the matrix scale alpha and plot the optimal 1-density staircase.

For each alpha on a grid, find the cyclic word of length n whose scaled
product has the largest normalized spectral radius, and record its 1-density.
The dependence on alpha is a monotone staircase from 0 to 1/2 whose plateaus
sit at rational densities; this script prints the table and a crude ASCII
rendering of the graph.
"""

import argparse
from fractions import Fraction

from sturmlab.jsr import ratio_staircase


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", type=int, default=50, help="number of alpha samples in [0, 1]")
    parser.add_argument("--n", type=int, default=14, help="cyclic word length")
    parser.add_argument("--plot-width", type=int, default=56)
    args = parser.parse_args()

    alphas = [Fraction(k, args.grid - 1) for k in range(args.grid)]
    results = list(ratio_staircase(alphas, args.n))

    print(f"optimal 1-density over cyclic words of length {args.n}")
    print(f"{'alpha':>8}  {'ratio':>6}  {'value':>18}  necklace")
    for r in results:
        print(f"{str(r.alpha):>8}  {str(r.ratio):>6}  {r.value:18.12f}  {r.necklace}")

    ratios = [r.ratio for r in results]
    assert ratios == sorted(ratios), "staircase should be monotone in alpha"
    print("\nratio vs alpha (0 at bottom, 1/2 at top):")
    levels = sorted(set(ratios), reverse=True)
    for level in levels:
        row = "".join("#" if r >= level else " " for r in ratios)
        print(f"{str(level):>5} |{row[:args.plot_width]}")
    print(f"      +{'-' * min(len(ratios), args.plot_width)}")
    print(f"       alpha = 0 .. 1 ({len(ratios)} samples)")
    print(f"\nplateau count: {len(levels)}")


if __name__ == "__main__":
    main()
