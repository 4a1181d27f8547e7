#!/usr/bin/env python3
"""Run every verification suite and print a combined report.

Usage:
    python scripts/verify_all.py [--order N] [--lambda q|sym] [--seed S] [--json]
"""

import argparse
import json
import sys
from fractions import Fraction

from kappatwist.verify import run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=3)
    ap.add_argument("--lambda", dest="lam", default="sym")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    lam = None if args.lam == "sym" else Fraction(args.lam)
    report = run_suite(
        "all", order=args.order, lam=lam, seed=args.seed, quick=args.quick
    )
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    else:
        print(report.render_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
