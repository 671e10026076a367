#!/usr/bin/env python3
"""Race a mechanical admission policy against shuffled copies of itself.

All competitors admit the same fraction of customers and see the same
arrival stream; only the arrangement of admissions differs.  The mechanical
(most evenly spread) policy should post the lowest long-run mean cost at
every admission rate tried.
"""

import argparse
from fractions import Fraction

from sturmlab.queueing import QueueConfig, admission_competition
from sturmlab.words import MechanicalSpec


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--gammas", default="1/4,1/3,2/5", help="comma-separated admission rates"
    )
    parser.add_argument("--horizon", type=int, default=100_000)
    parser.add_argument("--competitors", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"horizon {args.horizon}, {args.competitors} shuffled competitors per rate")
    print(f"{'gamma':>6}  {'mechanical':>11}  {'best shuffle':>12}  {'worst shuffle':>13}  verdict")
    overall = True
    for text in args.gammas.split(","):
        gamma = Fraction(text)
        config = QueueConfig(
            horizon=args.horizon, seed=args.seed, admission=MechanicalSpec(gamma)
        )
        summaries = admission_competition(config, args.competitors)
        mechanical = summaries[0].mean_cost
        others = [s.mean_cost for s in summaries[1:]]
        ok = all(mechanical <= c for c in others)
        overall = overall and ok
        print(
            f"{str(gamma):>6}  {mechanical:11.6f}  {min(others):12.6f}"
            f"  {max(others):13.6f}  {'wins' if ok else 'LOSES'}"
        )
    print(f"\nmechanical policy dominated every shuffle: {overall}")


if __name__ == "__main__":
    main()
