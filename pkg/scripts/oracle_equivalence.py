"""Run the three HKE oracles on a seeded random corpus and report agreement.

    python scripts/oracle_equivalence.py --count 10000 --max-members 8 --max-ground 12
"""

import argparse
import random
import time
from collections import Counter

from hketools.formats import random_setsystem
from hketools.hke import ORACLES, generate_hke


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--max-members", type=int, default=8)
    p.add_argument("--max-ground", type=int, default=12)
    p.add_argument("--hke-fraction", type=float, default=0.0,
                   help="share of the corpus drawn from the HKE generator")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = random.Random(args.seed)
    tally = Counter()
    timings = Counter()
    for _ in range(args.count):
        if rng.random() < args.hke_fraction:
            F = generate_hke(rng.randint(1, min(args.max_members, 6)), 2, rng.getrandbits(32))
        else:
            F = random_setsystem(rng.randint(1, args.max_members), rng.randint(1, args.max_ground),
                                 rng.choice([0.2, 0.5, 0.8]), rng.getrandbits(32))
        outcome = {}
        for name, oracle in ORACLES.items():
            t0 = time.perf_counter()
            outcome[name] = oracle(F).holds
            timings[name] += time.perf_counter() - t0
        if len(set(outcome.values())) > 1:
            tally["disagree"] += 1
            print("DISAGREEMENT", F, outcome)
        tally["hke" if outcome["partition"] else "not-hke"] += 1

    print(f"systems: {args.count}  hke: {tally['hke']}  not hke: {tally['not-hke']}  "
          f"disagreements: {tally['disagree']}")
    for name, secs in timings.items():
        print(f"  {name:<10} {secs:.2f}s")


if __name__ == "__main__":
    main()
