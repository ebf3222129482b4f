"""Histograms of hyperplane restrictions for the standard 7d forms under their metrics."""

import argparse

from stableforms.builtins import phi0, psi0, split_phi0, split_psi0
from stableforms.forms import PseudoMetric
from stableforms.restriction import restriction_survey

CASES = {
    "phi0/g0": (phi0, [1] * 7),
    "psi0/g0": (psi0, [1] * 7),
    "svphi0/sg0": (split_phi0, [1, 1, 1, -1, -1, -1, -1]),
    "spsi0/sg0": (split_psi0, [1, 1, 1, -1, -1, -1, -1]),
}

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, (make, diag) in CASES.items():
        hist = restriction_survey(make(), PseudoMetric.diagonal(diag), args.count, args.seed)
        print(name)
        for (ctype, fam), k in sorted(hist.items()):
            print(f"  {ctype:<10} {fam:<24} {k}")
