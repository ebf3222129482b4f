"""Verify every built-in ampleness witness and print its checks and hull certificate."""

import sys
from fractions import Fraction

from stableforms import ampleness, scalar

RUNS = [("timelike", None), ("spacelike", None), ("null", None), ("osymplectic-hull", 3),
        ("osymplectic-hull", 4), ("ospseudo-tau0", 3), ("osempro-abundance", 3)]

if __name__ == "__main__":
    ok = True
    for case, k in RUNS:
        res = ampleness.verify_witness(case, k, Fraction(1, 10))
        ok &= res.passed
        print(f"{case} k={k}: {'pass' if res.passed else 'FAIL'}")
        for name, good in res.checks:
            print(f"  [{'ok' if good else 'FAILED'}] {name}")
        coeffs = res.details.get("hull_coefficients")
        if coeffs:
            print("  hull coefficients:", ", ".join(scalar.to_str(c) for c in coeffs))
    sys.exit(0 if ok else 1)
