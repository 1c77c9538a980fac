#!/usr/bin/env python3
"""Build the degree n+1 binomial from the rigid square M_{n+1} and run the fiber search.

Usage: python3 scripts/fiber_check.py [n] [s]
"""

import json
import sys
import time

from sigvar.toric import binomial_in_ideal, generated_in_degree_upto, high_degree_binomial, verify_rigidity


def main(argv):
    n = int(argv[0]) if argv else 3
    s = int(argv[1]) if len(argv) > 1 else n
    h = high_degree_binomial(n)
    rig = verify_rigidity(h.square)
    t0 = time.perf_counter()
    verdict = generated_in_degree_upto(h.left, h.right, s)
    print(json.dumps({
        "n": n,
        "k": h.k,
        "matrix": [list(r) for r in h.square.matrix],
        "rigidity": rig.to_json(),
        "in_ideal": binomial_in_ideal(h.left, h.right),
        "fiber": verdict.to_json(),
        "seconds": round(time.perf_counter() - t0, 3),
    }))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
