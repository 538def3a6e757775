#!/usr/bin/env python3
"""Empirical p-integrality matrix for the mirror map of a triangle type.

For each prime coprime to the conductor, compute the exact valuation
profile of q(a,b|z) to the requested order and print one CSV row per
prime, alongside the congruence classifier's verdict for comparison.
Negative-valuation witnesses typically first appear near index p (near
2p when a parameter has denominator 2), so pick N accordingly.
"""

import argparse
import csv
import sys
from math import gcd

from triforms.dwork import theorem_classifier
from triforms.halphen import TriangleType
from triforms.lab import empirical_integrality


def is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--type", default="2,5", help="m1,m2 ('inf' allowed)")
    parser.add_argument("--pmax", type=int, default=50)
    parser.add_argument("--N", type=int, default=120)
    args = parser.parse_args()

    tri = TriangleType.parse(args.type)
    writer = csv.writer(sys.stdout)
    writer.writerow(["type", "p", "N", "verdict", "firstNegativeIndex",
                     "minValuation", "classifier"])
    for p in range(2, args.pmax + 1):
        if not is_prime(p) or gcd(p, tri.conductor) > 1:
            continue
        v = empirical_integrality(tri, p, args.N)
        cls = theorem_classifier(tri, p)
        writer.writerow([str(tri), p, args.N, v.classification.value,
                         v.first_negative_index, v.profile.min_valuation,
                         cls.verdict.value])


if __name__ == "__main__":
    main()
