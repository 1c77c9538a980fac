#!/usr/bin/env python3
"""Scan all shapes up to a length for defectiveness at level k.

This is an exploration aid for the subsequence characterization of defective
shapes. It only lists what the exact rank computation says; it proves nothing.
Usage: python3 scripts/defective_scan.py D K MAXLEN [--seed N]
"""

import argparse
import json
from itertools import product

from sigvar.paths import DEFAULT_SEED, rank_probe


def canonical(shape):
    """Relabel so letters first appear in the order 1, 2, ..."""
    relabel = {}
    for x in shape:
        relabel.setdefault(x, len(relabel) + 1)
    return tuple(relabel[x] for x in shape)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("d", type=int)
    ap.add_argument("k", type=int)
    ap.add_argument("max_len", type=int)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    seen = set()
    for n in range(1, args.max_len + 1):
        for shape in product(range(1, args.d + 1), repeat=n):
            c = canonical(shape)
            # adjacent repeats merge into one step, so skip them
            if c in seen or any(a == b for a, b in zip(c, c[1:])):
                continue
            seen.add(c)
            probe = rank_probe(c, args.k, seed=args.seed)
            if probe.rank < len(c):
                print(json.dumps({"shape": list(c), "k": args.k, "rank": probe.rank, "seed": args.seed}))


if __name__ == "__main__":
    main()
