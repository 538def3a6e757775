#!/usr/bin/env python3
"""Scan triangle types (m1, m2, inf) for almost-integrality.

A type is almost integral when its mirror map is p-integral for all but
finitely many primes; by the congruence classifier this is a finite
check on residue classes modulo the conductor.  The scan is expected to
stabilize at eight types for any bound >= 6.
"""

import argparse
import json

from triforms.dwork import takeuchi_scan


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=60,
                        help="scan m1 <= m2 <= bound (default 60)")
    args = parser.parse_args()
    found = takeuchi_scan(args.bound)
    print(json.dumps({"bound": args.bound,
                      "count": len(found),
                      "types": sorted(str(t) for t in found)}, indent=2))


if __name__ == "__main__":
    main()
