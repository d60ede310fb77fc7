"""Smoothing bumps, windows, gamma-ratio and contour weights, Mellin pairs."""

import math

import numpy as np
import pytest

from eislab import oracles, weights
from eislab.errors import DomainError
from eislab.weights import Bump, WeightContour


@pytest.fixture(scope="module")
def bump50():
    return Bump(B=2.0, alpha=0.009, T=50.0)


class TestBump:
    def test_mass_normalization(self, bump50):
        # h~(1) = total mass = T^(-alpha/2), with constants exactly one
        ht1 = weights.bump_transform(1.0, bump50)
        assert abs(ht1 - bump50.hhat0) < 1e-10 * bump50.hhat0

    def test_compact_support(self, bump50):
        lo = bump50.B - bump50.half_width
        hi = bump50.B + bump50.half_width
        assert weights.bump_h(lo - 1e-9, bump50) == 0.0
        assert weights.bump_h(hi + 1e-9, bump50) == 0.0
        assert weights.bump_h(bump50.B, bump50) > 0.0

    def test_derivative_growth(self, bump50):
        # |h^(k)| <= C_k (T^(alpha/2))^k; C_k frozen from measured suprema
        # of the mollifier profile (1.83, 18.0, 435, 1.8e4) with margin
        c_k = {1: 3.0, 2: 30.0, 3: 700.0, 4: 3e4}
        us = np.linspace(bump50.B - 0.95 * bump50.half_width,
                         bump50.B + 0.95 * bump50.half_width, 41)
        for k, bound in c_k.items():
            worst = max(abs(weights.bump_h_derivative(float(a), bump50, k, 2e-4))
                        for a in us)
            assert worst <= bound * (50.0 ** (k * 0.009 / 2))

    def test_transform_decay(self, bump50):
        # mollifier transform decays like exp(-c sqrt(height))
        v150 = abs(weights.bump_transform(1.0 - 0.01 - 150j, bump50))
        v600 = abs(weights.bump_transform(1.0 - 0.01 - 600j, bump50))
        v1800 = abs(weights.bump_transform(1.0 - 0.01 - 1800j, bump50))
        assert v600 < 1e-6 * bump50.hhat0
        assert v600 < v150 / 30.0
        assert v1800 < 1e-10 * bump50.hhat0
        h = weights.bump_transform_decay_height(bump50, 0.01, 1e-10)
        assert abs(weights.bump_transform(1.0 - 0.01 - 1j * h, bump50)) \
            < 1e-10 * bump50.hhat0

    def test_support_guard(self):
        with pytest.raises(DomainError):
            Bump(B=1.5, alpha=0.009, T=50.0)  # support would dip below 1


class TestWindowW:
    # the double-exponential cutoffs only separate from the endpoints for
    # exponentially large T; tested there, exactly as the formula is written
    T_BIG = 1e140

    def test_deep_bulk_is_one(self):
        assert weights.window_W(self.T_BIG, self.T_BIG, 0.009) == 1.0
        assert abs(weights.window_W(1.2 * self.T_BIG, self.T_BIG, 0.009) - 1.0) < 1e-50

    def test_origin_is_zero(self):
        assert weights.window_W(0.0, self.T_BIG, 0.009) == 0.0

    def test_top_edge_is_zero(self):
        assert abs(weights.window_W(2 * self.T_BIG, self.T_BIG, 0.009)) < 1e-50

    def test_range(self):
        for frac in (0.01, 0.3, 0.52, 1.0, 1.7, 1.99):
            v = weights.window_W(frac * self.T_BIG, self.T_BIG, 0.009)
            assert 0.0 <= v <= 1.0


class TestGammaRatioWeights:
    def test_hcal_envelope(self):
        # |Hcal(t)|^2 * |t| sqrt(4T^2-t^2) stays near 8 pi
        for T in (20.0, 50.0, 100.0):
            v = weights.weight_Hcal(T, T)
            envelope = abs(v) ** 2 * T * math.sqrt(3 * T * T)
            assert envelope < 100.0
            assert envelope == pytest.approx(8 * math.pi, rel=0.05)

    def test_hcal_conjugation(self):
        # reflecting every sign is complex conjugation of the gamma product
        t, T = 60.0, 50.0
        v = weights.weight_Hcal(t, T)
        num = 0j
        for sgn in (+1, -1):
            from eislab.specfun import log_gamma
            num += log_gamma((0.5 + 2j * T + 1j * sgn * t) / 2)
            num += log_gamma((0.5 + 1j * sgn * t) / 2)
        den = 2 * log_gamma(0.5 + 1j * T) + log_gamma(0.5 + 1j * t)
        assert np.exp(num - den) == pytest.approx(np.conj(v), rel=1e-12)

    def test_hcal_pm_oracle_point(self, bump50):
        # 50-digit gamma recomputation of the ratio at one bulk point
        t, T, s = 75.0, 50.0, 0.25 + 0.1j
        hp, hm = weights.weight_Hcal_pm(s, t, T, bump50)
        ht = weights.bump_transform(1.0 - s, bump50)
        acc = 0j
        for sT in (+1, -1):
            num = 0j
            for sgn in (+1, -1):
                num += oracles.hp_log_gamma((s + 0.5 + 2j * sT * T + 1j * sgn * t) / 2)
                num += oracles.hp_log_gamma((s + 0.5 + 1j * sgn * t) / 2)
            den = (oracles.hp_log_gamma(s + 0.5 + 1j * sT * T)
                   + oracles.hp_log_gamma(0.5 + 1j * T)
                   + oracles.hp_log_gamma(0.5 + 1j * t))
            ref = ht * np.exp(num - den)
            got = hp if sT > 0 else hm
            assert got == pytest.approx(ref, rel=1e-9)

    def test_leading_term_consistency_at_zero_shift(self, bump50):
        # at s = 0 the product Hcal * Hcal_plus matches the closed leading
        # form up to the documented O(1/t) correction
        t = T = 50.0
        hp, _ = weights.weight_Hcal_pm(0.0 + 0j, t, T, bump50)
        lead = weights.leading_terms(0.0 + 0j, t, T, bump50)
        ratio = weights.weight_Hcal(t, T) * hp / lead.hh_plus
        assert abs(ratio - 1.0) < 10.0 / t

    def test_leading_term_error_halves(self):
        s0 = 0.3 + 0.2j
        devs = {}
        for T in (100.0, 200.0):
            bT = Bump(B=2.0, alpha=0.009, T=T)
            lead = weights.leading_terms(s0, T, T, bT)
            hp, hm = weights.weight_Hcal_pm(s0, T, T, bT)
            hc = weights.weight_Hcal(T, T)
            devs[T] = max(abs(hc * hp / lead.hh_plus - 1.0),
                          abs(hc * hm * lead.v_minus_phase / lead.hh_minus - 1.0))
        assert devs[200.0] <= 0.75 * devs[100.0]

    def test_v_minus_phase_unimodular(self, bump50):
        lead = weights.leading_terms(0.2 + 0.1j, 60.0, 50.0, bump50)
        assert abs(lead.v_minus_phase) == pytest.approx(1.0, abs=1e-14)

    def test_parity_difference_small(self):
        # |G_(1/2) - G_(3/2)| at fixed w shrinks like 1/t
        w = np.array([0.1 + 0.3j])
        for t in (50.0, 100.0, 200.0):
            d = abs(weights.g_ratio(w, t, t, 0.5, +1.0)[0]
                    - weights.g_ratio(w, t, t, 1.5, +1.0)[0])
            assert d <= 1.5 / t


class TestContourWeights:
    def test_v_contour_independence(self):
        v1 = weights.weight_V_pm(100.0, 60.0, 50.0, "even", WeightContour(1.0, 30.0))
        v2 = weights.weight_V_pm(100.0, 60.0, 50.0, "even", WeightContour(2.0, 30.0))
        assert abs(v1[0] / v2[0] - 1) < 1e-8
        assert abs(v1[1] / v2[1] - 1) < 1e-8

    def test_v_support_window(self):
        t, T = 60.0, 50.0
        q0 = t * math.sqrt(4 * T * T - t * t) / (4 * math.pi ** 2)
        v1 = weights.weight_V_pm(1.0, t, T, "even")
        vf = weights.weight_V_pm(q0 * math.exp(11.0), t, T, "even")
        assert abs(vf[0]) < 1e-10 * abs(v1[0])
        assert abs(vf[1]) < 1e-10 * abs(v1[1])

    def test_v_envelope(self):
        t, T = 60.0, 50.0
        for x in (1.0, 10.0, 100.0):
            vp, vm = weights.weight_V_pm(x, t, T, "even", WeightContour(1.0, 30.0))
            env = t * math.sqrt(4 * T * T - t * t) / x
            assert max(abs(vp), abs(vm)) <= 100.0 * env

    def test_vcal_contour_independence(self, bump50):
        c1 = weights.weight_Vcal_pm(2.0, 60.0, 50.0, bump50, WeightContour(0.5, 1e9))
        c2 = weights.weight_Vcal_pm(2.0, 60.0, 50.0, bump50, WeightContour(1.5, 1e9))
        assert abs(c1.plus / c2.plus - 1) < 1e-7
        assert abs(c1.minus / c2.minus - 1) < 1e-7

    def test_vcal_contour_independence_at_noise_floor(self, bump50):
        # at x = 10 the weight has cancelled to ~1e-12 of its x = 1 scale;
        # sigma-agreement there is measured against the family scale (the
        # pointwise ratio sits at the double-precision cancellation floor)
        base = abs(weights.weight_Vcal_pm(1.0, 60.0, 50.0, bump50).plus)
        c1 = weights.weight_Vcal_pm(10.0, 60.0, 50.0, bump50, WeightContour(0.5, 1e9))
        c2 = weights.weight_Vcal_pm(10.0, 60.0, 50.0, bump50, WeightContour(1.5, 1e9))
        assert abs(c1.plus - c2.plus) < 1e-7 * base
        assert abs(c1.minus - c2.minus) < 1e-7 * base

    def test_vcal_support_window(self, bump50):
        base = weights.weight_Vcal_pm(1.0, 60.0, 50.0, bump50)
        far = weights.weight_Vcal_pm(50.0 ** 1.2, 60.0, 50.0, bump50,
                                     WeightContour(35.0, 1e9))
        assert abs(far.plus) < 1e-10 * abs(base.plus)
        assert abs(far.minus) < 1e-10 * abs(base.minus)

    def test_vcal_magnitude(self, bump50):
        # |Vcal(1, t)| = O(T^(-1 + alpha/2 + eps))
        base = weights.weight_Vcal_pm(1.0, 60.0, 50.0, bump50)
        assert abs(base.plus) * 50.0 < 100.0
        assert base.tail_estimate < 1e-8


class TestMellinPair:
    def test_mellin_barnes_spot_identity(self):
        # mu = nu = 0, s = 2: int x K_0(x)^2 dx = 1/2
        num = weights.mellin_barnes_kk_numeric(2.0, 0.0, 0.0)
        closed = weights.mellin_barnes_kk_closed(2.0, 0.0, 0.0)
        assert closed.real == pytest.approx(0.5, abs=1e-13)
        assert abs(num - closed) < 1e-8
        ref = oracles.hp_mellin_barnes_kk(2.0, 0.0, 0.0)
        assert abs(closed - ref) < 1e-12

    def test_mellin_barnes_imaginary_orders(self):
        num = weights.mellin_barnes_kk_numeric(2.0 + 0.5j, 3.0, 5.0)
        closed = weights.mellin_barnes_kk_closed(2.0 + 0.5j, 3.0, 5.0)
        ref = oracles.hp_mellin_barnes_kk(2.0 + 0.5j, 3j, 5j)
        assert abs(closed - ref) < 1e-10 * abs(ref)
        assert abs(num - closed) < 1e-7 * abs(closed)

    def test_g_transform_matches_closed_form(self):
        gn = weights.g_mellin_numeric(1.0, 3.0, 5.0)
        gc = weights.g_mellin_closed(1.0, 3.0, 5.0)
        assert abs(gn / gc - 1) < 1e-6

    def test_g_pair_api(self):
        g_num, G_closed = weights.g_mellin_pair(2.0, 1.0 + 0j, 5.0, 3.0)
        assert np.isfinite(g_num) and np.isfinite(G_closed)

    def test_g_exponential_decay(self):
        # |g(x)| <= C_T e^{-x} on samples
        vals = {x: abs(weights.g_lower_incomplete(x, 3.0, 5.0)) for x in (5.0, 10.0, 20.0)}
        c_t = max(v * math.exp(x) for x, v in vals.items())
        for x, v in vals.items():
            assert v <= (c_t + 1e-12) * math.exp(-x)
        assert vals[20.0] < vals[10.0] < vals[5.0]
