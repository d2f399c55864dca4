#!/usr/bin/env python3
"""Census of bisimplicial vertices over small even-hole-free graphs.

For each vertex count, enumerate isomorphism classes, keep the even-hole-free
ones and tabulate how many of their vertices are bisimplicial.  The minimum
column is the interesting one: it is never zero.

    python scripts/bisimplicial_census.py --max-n 8
"""

import argparse
import collections
import csv
import sys
import time

from ehl.bisimplicial import bisimplicial_vertices
from ehl.detectors import is_even_hole_free
from ehl.harness.enumerate import canonical_graphs


def census(n):
    hist = collections.Counter()
    ehf = 0
    for G in canonical_graphs(n):
        if not is_even_hole_free(G):
            continue
        ehf += 1
        hist[len(bisimplicial_vertices(G))] += 1
    return ehf, hist


def main(argv=None):
    p = argparse.ArgumentParser(description="tabulate bisimplicial vertices of even-hole-free graphs")
    p.add_argument("--max-n", type=int, default=7, help="largest vertex count (8 takes a few minutes)")
    p.add_argument("--csv", help="also write the histogram as CSV rows (n, bisimplicial, graphs)")
    args = p.parse_args(argv)

    rows = []
    print(f"{'n':>2} {'classes':>8} {'EHF':>7} {'min':>4} {'mean':>6} {'all':>6} {'sec':>6}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        ehf, hist = census(n)
        total = sum(k * c for k, c in hist.items())
        print(f"{n:>2} {len(canonical_graphs(n)):>8} {ehf:>7} {min(hist):>4} {total / ehf:>6.2f} "
              f"{hist[n]:>6} {time.perf_counter() - t0:>6.1f}", flush=True)
        rows += [(n, k, c) for k, c in sorted(hist.items())]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "bisimplicial", "graphs"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
