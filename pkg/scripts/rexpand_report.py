#!/usr/bin/env python3
"""Solve the perturbative R-matrix expansion order by order and print a
report: ansatz sizes, equation counts, solution-space dimensions, the
named third-order parameters, and the substitution residual.

Usage:
    python scripts/rexpand_report.py [--case i|ii|iii] [--up-to K]
                                     [--lambda p/q] [--truncation N]
"""

import argparse
import sys
from fractions import Fraction

from kappatwist.hopf import TwistContext
from kappatwist.poincare import realization
from kappatwist.rexpand import (
    expand,
    named_parameters,
    residual_through,
    wedge_check,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", choices=("i", "ii", "iii"), default="ii")
    ap.add_argument("--up-to", type=int, default=3)
    ap.add_argument("--lambda", dest="lam", default="1/2")
    ap.add_argument("--truncation", type=int, default=0)
    args = ap.parse_args()
    order = args.truncation or max(args.up_to, 2)
    ctx = TwistContext(order=order, lam=Fraction(args.lam))
    real = realization(args.case, ctx)

    results = expand(args.up_to, real, ctx)
    for r in results:
        line = (
            f"order {r.order}: {r.status:<11} ansatz={len(r.terms):<3}"
            f" equations={r.equations:<3} dimension={r.dimension}"
        )
        if r.status != "infeasible" and r.element is not None:
            line += f" wedge={wedge_check(r.element)}"
        print(line)
        if r.order == 3 and r.status == "parametric":
            params = named_parameters(r)
            print(
                "  free parameters (at the particular solution): "
                + ", ".join(f"{k}={v}" for k, v in params.items())
            )
    solved = [r.element for r in results if r.status != "infeasible"]
    if len(solved) == len(results):
        residual = residual_through(solved, ctx)
        grades = [
            k for k in range(1, len(solved) + 1)
            if not residual.grade_part(k).is_zero()
        ]
        print(
            "substitution residual through solved orders: "
            + ("clean" if not grades else f"nonzero at grades {grades}")
        )
        return 0
    print("expansion blocked: no solution at the last reported order")
    return 1


if __name__ == "__main__":
    sys.exit(main())
