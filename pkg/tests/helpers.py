"""Independent reimplementations used as oracles by the test suite.

Everything here recomputes library quantities through a different route:
doubled Fourier cutoffs, doubled quadrature resolution, or high-precision
mpmath paths, so agreement is evidence rather than tautology.
"""

import math

import numpy as np

from eislab import oracles
from eislab.arith import tau_gen
from eislab.specfun import PrecisionPolicy, xi_log


def eval_E_independent(z, T: float, extra_margin: float = 2.0,
                       oversample: float = 16.0) -> complex:
    """Fourier-sum Eisenstein value with doubled cutoff and doubled Bessel
    resolution, built directly from scratch (no EisensteinEvaluator)."""
    policy = PrecisionPolicy(rel_tol=1e-12, bessel_freq_oversample=oversample)
    from eislab.specfun import bessel_k_scaled

    lx = xi_log(1 + 2j * T)
    c = np.exp(xi_log(1 - 2j * T) - lx)
    pref = 2.0 * np.exp(-np.pi * T / 2 - lx)
    y, x = z.y, z.x
    n_max = int(math.ceil(extra_margin * (T + 10 * T ** (1 / 3) + 40) / (2 * math.pi * y)))
    total = (y ** 0.5) * (np.exp(1j * T * math.log(y)) + c * np.exp(-1j * T * math.log(y)))
    for n in range(1, n_max + 1):
        k = bessel_k_scaled(T, 2 * math.pi * n * y, policy)
        total += pref * math.sqrt(y) * tau_gen(n, T) * k * 2 * math.cos(2 * math.pi * n * x)
    return complex(total)


def hp_reference(name, *args, **kwargs):
    return getattr(oracles, name)(*args, **kwargs)
