#!/usr/bin/env python3
"""Regenerate every worked table and report which ones match.

Usage: python3 scripts/reproduce_tables.py [table ...]
"""

import sys

from sigvar.cli import REPRO_TABLES, run


def main(argv):
    tables = argv or sorted(REPRO_TABLES)
    failed = [t for t in tables if run(["repro", t]) != 0]
    if failed:
        print(f"mismatch in: {', '.join(failed)}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
