#!/usr/bin/env python3
"""Survey the scaled K-Bessel and trace-formula J-kernel against 50-digit
baselines over their (order, argument) rectangles.

Prints worst relative errors per regime; handy after touching the contour
quadrature.
"""

import sys
import time

from eislab import oracles
from eislab.specfun import bessel_k_scaled, kuznetsov_kernel


def main() -> int:
    t0 = time.time()
    worst_k = 0.0
    for T in (0.0, 5.0, 30.0, 100.0, 200.0, 300.0):
        for y in (0.5, 5.0, 0.6 * T + 1, max(T - 2, 1.0), T + 1, T + 30, 2 * T + 50):
            got = bessel_k_scaled(T, y)
            ref = oracles.hp_bessel_k_scaled_fast(T, y)
            if abs(ref) > 1e-250:
                rel = abs(got - ref) / abs(ref)
                worst_k = max(worst_k, rel)
                print(f"K: T={T:6.1f} y={y:8.2f} rel={rel:.2e}")
    worst_j = 0.0
    for t in (0.5, 4.2, 20.0, 100.0, 400.0):
        for x in (1e-4, 0.4, 5.0, 80.0):
            got = kuznetsov_kernel(x, t)
            ref = oracles.hp_kuznetsov_kernel_even(x, t)
            rel = abs(got - ref) / abs(ref)
            worst_j = max(worst_j, rel)
            print(f"J: t={t:6.1f} x={x:8.4f} rel={rel:.2e}")
    print(f"worst K: {worst_k:.2e}; worst J: {worst_j:.2e}  [{time.time()-t0:.0f}s]")
    return 0 if max(worst_k, worst_j) < 1e-9 else 1


if __name__ == "__main__":
    sys.exit(main())
