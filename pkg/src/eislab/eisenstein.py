"""The Eisenstein series on the modular surface, its truncation, and the
cuspidal-window function, evaluated from Fourier expansions.

On the critical line the expansion used is

    E(z, 1/2 + iT) = e(y) + (2 / Xi) sum_{n != 0} tau(|n|, T) sqrt(y)
                     K_{iT}(2 pi |n| y) e(n x),

with constant term e(y) = y^(1/2+iT) + c y^(1/2-iT), c = Xi_bar / Xi,
Xi = xi(1 + 2iT).  The Bessel factor is computed in the e^(pi T/2)-scaled
form and recombined with 1/Xi in log space, so no intermediate value under-
or overflows at any desk-scale T.  The truncated series drops the constant
term above height A; it is defined on the fundamental domain only (its
extension by group translates is *not* an automorphic function, and nothing
here evaluates it off the fundamental domain).

A second coefficient path handles real s in (1, 4]:

    E(z, s) = y^s + phi(s) y^(1-s) + (4 / xi(2s)) sum_{n >= 1} n^(s-1/2)
              sigma_{1-2s}(n) sqrt(y) K_{s-1/2}(2 pi n y) cos(2 pi n x),

with the real-order K-Bessel from scipy.  It is validated against the
coprime-pair lattice sum at high y, where the constant term dominates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kv as _kv_real

from eislab.arith import sigma_complex, tau_gen_many
from eislab.errors import DomainError
from eislab.specfun import (
    DEFAULT_POLICY,
    PrecisionPolicy,
    bessel_k_scaled,
    phi_log,
    xi_log,
)


@dataclass(frozen=True)
class Point:
    """A point x + iy of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"upper half-plane needs y > 0, got {self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class SpectralSetup:
    """Parameter bundle: spectral height T, truncation A, bump center B, alpha."""

    T: float
    A: float
    B: float = 2.0
    alpha: float = 0.009

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("T must be positive")
        if not self.A > 1:
            raise ValueError("truncation parameter A must exceed 1")
        if not self.B > 1:
            raise ValueError("bump center B must exceed 1")
        if not 0 < self.alpha < 0.01:
            raise ValueError("alpha must lie in (0, 1/100)")


_FLOOR_Y = math.sqrt(3.0) / 2.0


def reduce(z: Point):
    """Reduce z to the standard fundamental domain {|x| <= 1/2, |z| >= 1}.

    Returns (reduced point, integer matrix ((a,b),(c,d))) with determinant one
    mapping the input to the output under the fractional-linear action.
    """
    a, b, c, d = 1, 0, 0, 1
    x, y = float(z.x), float(z.y)
    for _ in range(256):
        shift = -int(np.round(x))
        if shift != 0:
            x += shift
            a, b = a + shift * c, b + shift * d
        r2 = x * x + y * y
        if r2 < 1.0 - 1e-15:
            # inversion z -> -1/z
            x, y = -x / r2, y / r2
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise RuntimeError("fundamental-domain reduction did not terminate")
    assert abs(x) <= 0.5 + 1e-12 and x * x + y * y >= 1.0 - 1e-12
    return Point(x, y), ((a, b), (c, d))


def apply_matrix(mat, z: Point) -> Point:
    """Fractional-linear action of an integer matrix on a point."""
    (a, b), (c, d) = mat
    w = (a * z.z + b) / (c * z.z + d)
    return Point(w.real, w.imag)


class EisensteinEvaluator:
    """Critical-line Eisenstein series for one (T, A); caches built eagerly.

    Immutable after construction; evaluation is pure and safe to call from
    concurrent workers.
    """

    def __init__(self, setup: SpectralSetup, policy: PrecisionPolicy = DEFAULT_POLICY):
        self.setup = setup
        self.policy = policy
        T = setup.T
        self.log_xi_norm = xi_log(1 + 2j * T, policy)
        lc = xi_log(1 - 2j * T, policy) - self.log_xi_norm
        self.scattering_c = complex(np.exp(1j * lc.imag) * np.exp(lc.real))
        # 2 e^{-pi T/2} / xi(1+2iT), the O(1) prefactor of the scaled modes
        self.mode_prefactor = complex(2.0 * np.exp(-np.pi * T / 2 - self.log_xi_norm))
        self.cutoff_margin = T + 10.0 * T ** (1.0 / 3.0) + 40.0
        n_top = self.n_max(_FLOOR_Y)
        self._tau = tau_gen_many(max(n_top, 1), T)
        self._bessel_cache: dict = {}

    def n_max(self, y: float) -> int:
        """Fourier cutoff: K_{iT}(2 pi n y) is negligible past this index."""
        return max(1, int(math.ceil(self.cutoff_margin / (2.0 * math.pi * y))))

    def constant_term(self, y: float) -> complex:
        if y <= 0:
            raise DomainError("constant_term needs y > 0")
        T = self.setup.T
        ry = math.sqrt(y)
        osc = complex(np.exp(1j * T * math.log(y)))
        return ry * osc + self.scattering_c * ry / osc

    def _mode_coefficients(self, y: float) -> np.ndarray:
        """Coefficient of e(n x) + e(-n x) for n = 1..n_max at height y."""
        key = round(y, 15)
        hit = self._bessel_cache.get(key)
        if hit is not None:
            return hit
        T = self.setup.T
        nm = self.n_max(y)
        if nm >= len(self._tau):
            self._tau = tau_gen_many(nm, T)
        ns = np.arange(1, nm + 1)
        ks = np.array([bessel_k_scaled(T, 2.0 * math.pi * n * y, self.policy)
                       for n in ns])
        coef = self.mode_prefactor * math.sqrt(y) * self._tau[1:nm + 1] * ks
        if len(self._bessel_cache) < 4096:
            self._bessel_cache[key] = coef
        return coef

    def eval_row(self, y: float, xs) -> np.ndarray:
        """Full E(x + iy, 1/2 + iT) for an array of x at one height y."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        coef = self._mode_coefficients(y)
        ns = np.arange(1, len(coef) + 1)
        # e(nx) + e(-nx) = 2 cos(2 pi n x); argument reduced mod 1 first
        phases = 2.0 * np.cos(2.0 * np.pi * np.outer(ns, np.mod(xs, 1.0)))
        return self.constant_term(y) + coef @ phases

    def eval_row_trunc(self, y: float, xs) -> np.ndarray:
        """Truncated series: constant term dropped above y = A."""
        vals = self.eval_row(y, xs)
        if y > self.setup.A:
            vals = vals - self.constant_term(y)
        return vals

    def eval_E(self, z: Point) -> complex:
        """E(z, 1/2 + iT); z is reduced to the fundamental domain first."""
        zr, _ = reduce(z)
        if zr.y < _FLOOR_Y - 1e-9:
            raise DomainError("reduction failed to reach the fundamental domain")
        return complex(self.eval_row(zr.y, [zr.x])[0])

    def eval_E_trunc(self, z: Point) -> complex:
        """Truncated Eisenstein series at a (reduced) point."""
        zr, _ = reduce(z)
        val = complex(self.eval_row(zr.y, [zr.x])[0])
        if zr.y > self.setup.A:
            val -= self.constant_term(zr.y)
        return val

    def eval_H_A(self, z: Point) -> complex:
        """Cuspidal window: 0 below A, else 2 e(y) E_A(z)."""
        zr, _ = reduce(z)
        if zr.y <= self.setup.A:
            return 0.0 + 0.0j
        return 2.0 * self.constant_term(zr.y) * self.eval_E_trunc(zr)

    def eval_row_H_A(self, y: float, xs) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        if y <= self.setup.A:
            return np.zeros(len(xs), dtype=complex)
        return 2.0 * self.constant_term(y) * self.eval_row_trunc(y, xs)


class RealSEvaluator:
    """E(z, s) for real s in (1, 4] from the sigma-coefficient expansion."""

    def __init__(self, s: float, policy: PrecisionPolicy = DEFAULT_POLICY):
        if not 1.0 < s <= 4.0:
            raise DomainError("RealSEvaluator supports real s in (1, 4]")
        self.s = float(s)
        self.policy = policy
        self.log_xi_2s = xi_log(2.0 * s, policy)
        lp = phi_log(complex(s), policy)
        self.phi_s = complex(np.exp(lp))
        self.pref = complex(4.0 * np.exp(-self.log_xi_2s))

    def n_max(self, y: float) -> int:
        # real-order K decays like e^{-2 pi n y}; 7/y puts the tail near 1e-17
        return int(math.ceil(7.0 / y)) + 8

    def constant_term(self, y: float) -> float:
        return y ** self.s + self.phi_s.real * y ** (1.0 - self.s)

    def eval_row(self, y: float, xs, A: float | None = None) -> np.ndarray:
        """E(x+iy, s) for an x array; subtracts the constant term if y > A."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        nm = self.n_max(y)
        ns = np.arange(1, nm + 1)
        kvals = _kv_real(self.s - 0.5, 2.0 * np.pi * ns * y)
        sig = np.array([sigma_complex(int(n), 1.0 - 2.0 * self.s).real for n in ns])
        coef = self.pref * ns ** (self.s - 0.5) * sig * math.sqrt(y) * kvals
        phases = np.cos(2.0 * np.pi * np.outer(ns, np.mod(xs, 1.0)))
        vals = coef @ phases
        if A is None or y <= A:
            vals = vals + self.constant_term(y)
        return vals.astype(complex)


def lattice_sum_reference(z: Point, s: float, bound: int = 120) -> float:
    """Brute-force (1/2) sum over coprime (c, d) of y^s / |cz+d|^(2s).

    Converges for real s > 1; used only to validate the real-s coefficient
    path at heights where the constant term dominates.
    """
    total = 0.0
    zz = z.z
    for c in range(-bound, bound + 1):
        for d in range(-bound, bound + 1):
            if (c, d) == (0, 0) or math.gcd(abs(c), abs(d)) != 1:
                continue
            total += z.y ** s / abs(c * zz + d) ** (2 * s)
    return 0.5 * total
