#!/usr/bin/env python3
"""Search for very-ampleness holes and write the certificates to JSON files.

Each certificate is re-verified from its serialized form before it is kept.
Usage: python3 scripts/hole_certificates.py [outdir]
"""

import json
import sys
import time
from pathlib import Path

from sigvar.polytopes import HoleCertificate, verify_hole_certificate, very_ample_hole

INSTANCES = [((1, 6, 10, 15), 30, 60), (tuple(range(1, 10)), 18, 60)]


def main(argv):
    outdir = Path(argv[0] if argv else "certificates")
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for w, k, bound in INSTANCES:
        t0 = time.perf_counter()
        search = very_ample_hole(w, k, bound)
        name = f"hole_{'-'.join(map(str, w))}_{k}.json"
        if not search.found:
            print(f"{name}: no hole within bound {bound}")
            status = 1
            continue
        data = search.certificate.to_json()
        ok = verify_hole_certificate(HoleCertificate.from_json(data))
        (outdir / name).write_text(json.dumps(data, indent=2) + "\n")
        print(f"{name}: z={data['z']} vertex={data['vertex']} verified={ok} ({time.perf_counter() - t0:.1f}s)")
        status |= 0 if ok else 1
    return status


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
