"""Bessel kernels with imaginary order.

Scaled K-Bessel
---------------
``bessel_k_scaled(T, y)`` returns e^(pi T/2) K_{iT}(y), the combination that
is O(1) through the oscillatory range y < T.  Both evaluation paths are exact
contour rotations of the cosine-transform representation

    e^(pi T/2) K_{iT}(y) = int_0^inf cos(T u - y sinh u) du,

chosen so the integrand never exceeds the result's own scale (the naive
real-axis form of int_0^inf e^(-y cosh u) cos(Tu) du loses e^(pi T/2 - ...)
of precision to cancellation once T is past ~25):

* oscillatory range (y below the turning point y ~ T): the cosine form above,
  integrated on [0, u1] with y cosh u1 = max(2T, 30), the remainder pushed
  onto a descending vertical leg u1 - i r, r in (0, pi/2], and the horizontal
  leg Im u = -pi/2 where the integrand is e^(T pi/2 - y cosh x), superexponentially
  decaying by the choice of u1;

* decay range (y past the turning point): the saddle-shifted real form

    e^(T arccos(T/y)) int_0^inf e^(-sqrt(y^2-T^2) cosh u) cos(T (sinh u - u)) du,

  whose integrand peak matches the result scale, so no cancellation.

Step control is frequency-aware in both paths: composite Gauss-Legendre
panels sized to the local bandwidth with ``policy.bessel_freq_oversample``
nodes per oscillation, cut off where the damped exponent passes
``policy.exp_cutoff``.

Kuznetsov kernel
----------------
``kuznetsov_kernel(x, t)`` returns the t-even part of (2i/sinh(pi t)) J_{2it}(4 pi x),

    i (J_{2it}(w) - J_{-2it}(w)) / sinh(pi t) = (4/pi) int_0^inf cos(w cosh s) cos(2 t s) ds

with w = 4 pi x.  The right-hand side follows from the Hankel-function
integrals once both Mehler-Sonine pieces are scaled against sinh(pi t); the
e^(pi t) scales cancel identically, leaving an O(1) real integrand valid for
all w > 0 and real t.  Pointwise, 2i J_{2it}/sinh(pi t) itself is *not* real;
only this even part is, and the even part is the only combination the
trace-formula integrals against even test functions ever see.  Tails are
again handled by rotation to Im s = +pi/2.
"""

from __future__ import annotations

import numpy as np

from eislab.errors import DomainError
from eislab.quadrature import panel_nodes
from eislab.specfun.policy import DEFAULT_POLICY, PrecisionPolicy

_TINY_FLOOR = 1e-280


def _k_scaled_oscillatory(T: float, y: float, policy: PrecisionPolicy) -> float:
    os = policy.bessel_freq_oversample
    M = max(2.0 * T, 30.0)
    u1 = float(np.arccosh(M / y)) if M / y > 1.0 else 0.0
    total = 0.0
    if u1 > 0.0:
        bw = max(T, M - T)
        n, w = panel_nodes(0.0, u1, bw, os)
        total += float(np.sum(w * np.cos(T * n - y * np.sinh(n))))
    sh1 = np.sinh(u1)
    # vertical leg u = u1 - i r: |integrand| = exp(-(y cosh(u1) sin r - T r)) <= 1
    bw_v = y * sh1 + T
    n, w = panel_nodes(0.0, np.pi / 2, bw_v, os)
    theta = T * (u1 - 1j * n) - y * np.sinh(u1 - 1j * n)
    total += float(np.real(np.sum(w * np.exp(1j * theta) * (-1j))))
    # horizontal leg u = x - i pi/2: integrand e^{iTx} e^{T pi/2 - y cosh x}
    cap = (T * np.pi / 2 + policy.exp_cutoff + 45.0) / y
    if cap > np.cosh(u1):
        xmax = float(np.arccosh(cap))
        bw_h = T + y * np.sinh(xmax)
        n, w = panel_nodes(u1, xmax, bw_h, os)
        total += float(np.real(np.sum(
            w * np.exp(1j * T * n) * np.exp(T * np.pi / 2 - y * np.cosh(n)))))
    return total


def _k_scaled_decay(T: float, y: float, policy: PrecisionPolicy) -> float:
    os = policy.bessel_freq_oversample
    p = float(np.sqrt((y - T) * (y + T)))
    pref = T * float(np.arccos(T / y)) if T > 0 else 0.0
    if pref - p < -(policy.exp_cutoff + 45.0):
        return 0.0  # below the 1e-280 absolute floor
    chmax = 1.0 + (policy.exp_cutoff + 45.0 + max(pref - p, 0.0)) / p
    umax = float(np.arccosh(chmax))
    bw = p * np.sinh(umax) + T * (np.cosh(umax) - 1.0)
    n, w = panel_nodes(0.0, umax, bw, os)
    vals = np.exp(pref - p * np.cosh(n)) * np.cos(T * (np.sinh(n) - n))
    return float(np.sum(w * vals))


def bessel_k_scaled(T: float, y: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """e^(pi T/2) K_{iT}(y) for T >= 0, y > 0; real.

    Relative accuracy at policy.rel_tol wherever the value exceeds ~1e-280;
    below that scale the absolute error is under 1e-280 (the value may
    underflow to exactly 0).
    """
    if y <= 0.0:
        raise DomainError(f"bessel_k_scaled requires y > 0, got {y}")
    T = abs(float(T))  # K_{iT} = K_{-iT}
    if y >= T + 3.0 * max(T, 1.0) ** (1.0 / 3.0):
        return _k_scaled_decay(T, y, policy)
    return _k_scaled_oscillatory(T, y, policy)


def bessel_k_scaled_many(T: float, ys, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Vectorized convenience wrapper over ``bessel_k_scaled``."""
    return np.array([bessel_k_scaled(T, float(y), policy) for y in np.atleast_1d(ys)])


# ---------------------------------------------------------------------------
# Kuznetsov kernel
# ---------------------------------------------------------------------------

def _kernel_even_many(w: float, ts: np.ndarray, policy: PrecisionPolicy) -> np.ndarray:
    """(4/pi) int_0^inf cos(w cosh s) cos(2 t s) ds for an array of t >= 0.

    One leg geometry is chosen from max(t), so the node grids are shared
    across the whole t array.
    """
    os = policy.bessel_freq_oversample
    tmax = float(np.max(ts))
    M = max(4.0 * tmax, 20.0)
    s1 = float(np.arcsinh(M / w))
    sh1, ch1 = np.sinh(s1), np.cosh(s1)
    total = np.zeros_like(ts, dtype=float)
    # real leg
    bw = w * sh1 + 2.0 * tmax
    n, wt = panel_nodes(0.0, s1, bw, os)
    wc = w * np.cosh(n)
    c2 = np.cos(np.outer(ts, 2.0 * n))
    # cos(wc + 2ts) + cos(wc - 2ts) = 2 cos(wc) cos(2ts)
    total += 2.0 * (c2 * (np.cos(wc) * wt)[None, :]).sum(axis=1)
    # rotated tails, sigma = +-1: int_{s1}^inf e^{i(w cosh s + sigma 2 t s)} ds.
    # Exponents are folded into one matrix before exponentiating: the shared
    # leg factor and the per-t phase can individually leave double range at
    # large t even though their product never does.
    for sg in (+1.0, -1.0):
        bw_v = w * ch1 + 2.0 * tmax
        n, wt = panel_nodes(0.0, np.pi / 2, bw_v, os)
        zz = s1 + 1j * n
        expo = (1j * w * np.cosh(zz))[None, :] + 1j * sg * 2.0 * np.outer(ts, zz)
        total += np.real(np.exp(expo) @ (1j * wt))
        # horizontal: s = x + i pi/2, integrand e^{-w sinh x - sg pi t + i sg 2 t x}
        target = 50.0 + max(-sg, 0.0) * np.pi * tmax
        if w * sh1 < target:
            xmax = float(np.arcsinh(target / w))
            bw_h = 2.0 * tmax + w * np.cosh(xmax)
            n, wt = panel_nodes(s1, xmax, bw_h, os)
            expo = (-w * np.sinh(n))[None, :] \
                + 1j * sg * 2.0 * np.outer(ts, n) - sg * np.pi * ts[:, None]
            total += np.real(np.exp(expo) @ wt)
    return (2.0 / np.pi) * total


def kuznetsov_kernel_even_many(x: float, ts, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Even part of the trace-formula kernel at fixed x over an array of t >= 0."""
    if x <= 0.0:
        raise DomainError(f"kuznetsov kernel requires x > 0, got {x}")
    ts = np.asarray(ts, dtype=float)
    if (ts < 0).any():
        raise DomainError("t array must be nonnegative (kernel is even in t)")
    return _kernel_even_many(4.0 * np.pi * x, ts, policy)


def kuznetsov_kernel(x: float, t: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """t-even part of (2i/sinh(pi t)) J_{2it}(4 pi x); real for real t, x.

    Returned as complex per the library convention for spectral kernels; the
    imaginary part is identically zero.
    """
    if x <= 0.0:
        raise DomainError(f"kuznetsov_kernel requires x > 0, got {x}")
    if t == 0.0:
        raise DomainError("kuznetsov_kernel requires t != 0 (limit exists but is not taken here)")
    val = _kernel_even_many(4.0 * np.pi * x, np.array([abs(float(t))]), policy)[0]
    return complex(val)


def bessel_j_transform_kernel_many(x: float, ts, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Even combination (J_{2it} - J_{-2it})(2 pi x) / cosh(pi t) over t >= 0.

    Equals -i tanh(pi t) times the even kernel at half the argument scale;
    used by the oscillatory-transform diagnostics.
    """
    ts = np.asarray(ts, dtype=float)
    ker = _kernel_even_many(2.0 * np.pi * x, ts, policy)
    return -1j * np.tanh(np.pi * ts) * ker
