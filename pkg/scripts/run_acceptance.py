"""Print one pass/fail line per acceptance criterion; exit 1 if any fails."""

import sys

from stableforms.acceptance import run_all

if __name__ == "__main__":
    results = run_all(print)
    sys.exit(0 if all(r.passed for r in results) else 1)
