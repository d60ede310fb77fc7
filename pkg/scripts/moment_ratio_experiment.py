#!/usr/bin/env python3
"""Sweep the fourth-moment ratio over a T grid at several truncation heights.

Produces a CSV (and a gnuplot script) showing the approach of
||E_A||_4^4 / ((36/pi) log^2 T) toward 1, together with the exact
second-moment cross-check per grid cell.  Desk-scale heights only; the
ratio table, not a toleranced limit, is the deliverable.

Usage:
    python scripts/moment_ratio_experiment.py [--T 10,16,25,40,50] [--A 1.5,2,3]
"""

import argparse
import math
import sys
import time

from eislab import moments
from eislab.eisenstein import SpectralSetup


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--T", default="10,16,25,40,50")
    ap.add_argument("--A", default="1.5,2,3")
    ap.add_argument("--out", default="moment_ratio.csv")
    args = ap.parse_args()
    Ts = [float(x) for x in args.T.split(",")]
    As = [float(x) for x in args.A.split(",")]

    rows = ["T,A,fourth,ratio,second_rel_err,seconds"]
    for T in Ts:
        for A in As:
            t0 = time.time()
            res = moments.fourth_moment(SpectralSetup(T=T, A=A), tol=math.inf)
            closed = moments.maass_selberg_limit(T, A)
            rel2 = abs(res.second_moment - closed) / abs(closed)
            dt = time.time() - t0
            rows.append(f"{T},{A},{res.report.value:.8f},{res.report.ratio:.6f},"
                        f"{rel2:.3e},{dt:.1f}")
            print(rows[-1], flush=True)
    with open(args.out, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
