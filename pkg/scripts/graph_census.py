"""Exhaustive census of labeled graphs: KE-ness, Omega heredity, certificates.

    python scripts/graph_census.py --max-n 6
"""

import argparse
import time
from collections import Counter

from hketools.graph import Graph, all_pairs, independence, omega_is_hke, verify_characterization


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--search-cap", type=int, default=12)
    args = p.parse_args()

    print(f"{'n':>2} {'graphs':>8} {'KE':>8} {'Omega HKE':>10} {'Omega cert':>10} {'max|Omega|':>10} {'secs':>6}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        c = Counter()
        for mask in range(1 << len(all_pairs(n))):
            G = Graph.from_edge_mask(n, mask)
            omega = independence(G)
            rep = verify_characterization(G, args.search_cap, omega=omega)
            c["graphs"] += 1
            c["max_omega"] = max(c["max_omega"], omega.family.m)
            if rep.is_ke:
                c["ke"] += 1
                c["omega_hke"] += omega_is_hke(G, omega).holds
                c["omega_cert"] += rep.omega_certifies
        secs = time.perf_counter() - t0
        print(f"{n:>2} {c['graphs']:>8} {c['ke']:>8} {c['omega_hke']:>10} {c['omega_cert']:>10} "
              f"{c['max_omega']:>10} {secs:>6.1f}")


if __name__ == "__main__":
    main()
