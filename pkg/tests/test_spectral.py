"""Maass-form handling, AFE central values, trace-formula diagnostics."""

import io
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from eislab import arith, moments, spectral, weights
from eislab.eisenstein import SpectralSetup
from eislab.errors import MissingEigenvalueError, ValidationError
from eislab.specfun import log_gamma, stirling_gamma_main_log

DATA = Path(__file__).resolve().parents[1] / "data" / "maass_forms.csv"


@pytest.fixture(scope="module")
def pseudoform():
    return spectral.divisor_pseudoform(13.78, 120_000)


class TestIngest:
    def test_fixture_file_accepted(self):
        forms = spectral.ingest_forms(str(DATA))
        assert len(forms) == 2
        parities = {f.parity for f in forms}
        assert parities == {"even", "odd"}
        for f in forms:
            assert f.hecke[1] == 1.0
            assert f.sym2_L1 is not None

    def test_synthetic_multiplicative_accepted(self):
        rows = [{"t": "7.7", "parity": "even", "n": str(n),
                 "lambda": repr(arith.tau_gen(n, 1.3))} for n in range(1, 13)]
        forms = spectral.ingest_forms(rows)
        assert forms[0].n_max == 12
        # relation residual is identically zero on multiplicative data
        assert arith.hecke_relation_check(forms[0], 2, 3) < 1e-12

    def test_lambda_one_required(self):
        rows = [{"t": "5.0", "parity": "even", "n": "1", "lambda": "0.9"}]
        with pytest.raises(ValidationError):
            spectral.ingest_forms(rows)

    def test_hecke_violation_rejected(self):
        rows = [{"t": "5.0", "parity": "even", "n": str(n), "lambda": v}
                for n, v in [(1, "1.0"), (2, "1.5"), (3, "0.2"), (4, "0.0"), (6, "0.3")]]
        with pytest.raises(ValidationError):
            spectral.ingest_forms(rows)

    def test_duplicate_last_write_wins(self):
        rows = [{"t": "5.0", "parity": "even", "n": "1", "lambda": "1.0"},
                {"t": "5.0", "parity": "even", "n": "2", "lambda": "0.7"},
                {"t": "5.0", "parity": "even", "n": "2", "lambda": "0.8"}]
        with pytest.warns(UserWarning, match="duplicate"):
            forms = spectral.ingest_forms(rows)
        assert forms[0].hecke[2] == 0.8

    def test_csv_text_roundtrip(self):
        text = "t,parity,n,lambda\n5.5,odd,1,1.0\n5.5,odd,2,-0.4\n"
        forms = spectral.ingest_forms(io.StringIO(text))
        assert forms[0].parity == "odd"
        assert forms[0].eigenvalue(-2) == pytest.approx(0.4)


class TestAFE:
    def test_exact_oracle_midrange(self, pseudoform):
        # lambda(n) = tau(n, gamma) has L = zeta(s+i gamma) zeta(s-i gamma):
        # the central-value product has a closed zeta-product oracle.  The
        # shift T keeps the pseudoform's polar points out of the smoothing
        # window (|2T - gamma| large); cusp forms have no such poles.
        oracle = spectral.zeta_product_oracle(13.78, 3.0)
        afe = spectral.afe_pair(pseudoform, 3.0, tail_tol=1e-9)
        assert abs(afe - oracle) / abs(oracle) < 1e-6

    def test_degenerate_height_squares_central_value(self, pseudoform):
        oracle = spectral.zeta_product_oracle(13.78, 0.0)
        afe = spectral.afe_pair(pseudoform, 0.0, tail_tol=1e-9)
        assert abs(afe - oracle) / abs(oracle) < 1e-4

    def test_independent_smoother_agrees(self, pseudoform):
        # same identity, different admissible smoothing kernel
        a = spectral.afe_pair(pseudoform, 3.0, tail_tol=1e-9)
        b = spectral.afe_pair(pseudoform, 3.0, tail_tol=1e-9, smoother=0.25)
        assert abs(a - b) / abs(a) < 1e-5

    def test_contour_independence(self, pseudoform):
        a = spectral.afe_pair(pseudoform, 3.0, weights.WeightContour(1.0, 20.0),
                              tail_tol=1e-9)
        b = spectral.afe_pair(pseudoform, 3.0, weights.WeightContour(2.0, 20.0),
                              tail_tol=1e-9)
        assert abs(a - b) / abs(a) < 1e-7

    def test_odd_form_finite(self):
        # odd parity selects the shifted gamma data; the sum stays finite
        # (its pairing weight vanishes separately).  Synthetic Hecke-exact
        # eigenvalues: lambda(p) = 2 cos(golden-angle p), filled by recursion.
        n_need = 60_000
        is_prime = np.ones(n_need + 1, dtype=bool)
        is_prime[:2] = False
        for p in range(2, int(n_need ** 0.5) + 1):
            if is_prime[p]:
                is_prime[p * p::p] = False
        primes = {int(p): 2.0 * math.cos(2.399963 * p)
                  for p in np.nonzero(is_prime)[0]}
        lam = spectral.hecke_fill(primes, n_need)
        form = spectral.MaassForm(t=9.5337, parity="odd", hecke=lam)
        val = spectral.afe_pair(form, 3.0, tail_tol=1e-6)
        assert np.isfinite(abs(val))

    def test_short_odd_form_guarded(self):
        lam = spectral.hecke_fill({2: -1.068333, 3: -0.456197, 5: -0.290673,
                                   7: 0.776463}, 10)
        form = spectral.MaassForm(t=9.5337, parity="odd", hecke=lam)
        with pytest.raises(MissingEigenvalueError):
            spectral.afe_pair(form, 3.0)  # demo form is far too short

    def test_insufficient_eigenvalues_guarded(self):
        short = spectral.divisor_pseudoform(13.78, 50)
        with pytest.raises(MissingEigenvalueError):
            spectral.afe_pair(short, 3.0)


class TestRankinSelberg:
    def test_odd_vanishes(self):
        lam = spectral.hecke_fill({2: -1.068333, 3: -0.456197}, 9)
        form = spectral.MaassForm(t=9.5337, parity="odd", hecke=lam, sym2_L1=1.83)
        assert spectral.rankin_selberg_pairing(form, 6.0) == 0.0

    def test_missing_sym2_raises(self, pseudoform):
        with pytest.raises(MissingEigenvalueError):
            spectral.rankin_selberg_pairing(pseudoform, 3.0)

    def test_even_pairing_positive_finite(self, pseudoform):
        form = spectral.MaassForm(t=pseudoform.t, parity="even",
                                  hecke=pseudoform.hecke, sym2_L1=1.05)
        val = spectral.rankin_selberg_pairing(form, 3.0)
        assert np.isfinite(abs(val)) and abs(val) > 0

    def test_stirling_gamma_replacement_stable(self, pseudoform):
        # replacing the completed-L gamma factors by their large-height
        # surrogates moves the magnitude only at the documented 1/t level
        t, T = 13.78, 6.0
        exact = (log_gamma((0.5 + 2j * T + 1j * t) / 2)
                 + log_gamma((0.5 + 2j * T - 1j * t) / 2)
                 + log_gamma((0.5 + 1j * t) / 2) + log_gamma((0.5 - 1j * t) / 2))
        approx = (stirling_gamma_main_log(0.25 + 1j * T, t / 2)
                  + stirling_gamma_main_log(0.25 + 1j * T, -t / 2)
                  + stirling_gamma_main_log(0.25, t / 2)
                  + stirling_gamma_main_log(0.25, -t / 2))
        assert abs(abs(np.exp(approx - exact)) - 1.0) < 10.0 / t


@pytest.fixture(scope="module")
def fixture_forms():
    return spectral.ingest_forms(str(DATA))


class TestKuznetsov:
    def test_delta_term_two_resolutions(self, fixture_forms):
        from eislab.quadrature import panel_nodes
        phi = spectral.TestFunction(kind="gaussian", width=8.0)
        vals = []
        for os in (8.0, 16.0):
            n, w = panel_nodes(0.0, phi.support_cut, 8.0, os, min_panels=12)
            vals.append(2.0 * np.sum(w * np.tanh(np.pi * n) * n * phi(n))
                        / (2 * np.pi ** 2))
        assert abs(vals[0] - vals[1]) < 1e-10 * abs(vals[1])

    def test_diagonal_sides(self, fixture_forms):
        phi = spectral.TestFunction(kind="gaussian", width=8.0)
        rep = spectral.kuznetsov_two_sides(1, 1, phi, fixture_forms, c_max=40)
        assert rep.spectral_side > 0 and rep.geometric_side > 0
        # with n = m every missing basis element contributes positively
        assert rep.basis_gap > 0
        assert abs(rep.spectral_side - rep.geometric_side) \
            <= rep.basis_gap + rep.tail_estimate + 1e-12

    def test_off_diagonal_order_of_magnitude(self, fixture_forms):
        phi = spectral.TestFunction(kind="gaussian", width=8.0)
        rep = spectral.kuznetsov_two_sides(1, 2, phi, fixture_forms, c_max=40)
        assert math.copysign(1, rep.spectral_side) == math.copysign(1, rep.geometric_side)
        assert abs(rep.spectral_side) < 10 * abs(rep.geometric_side) + 1.0
        assert abs(rep.geometric_side) < 10 * abs(rep.spectral_side) + 1.0

    def test_tail_monotone_under_doubling(self, fixture_forms):
        phi = spectral.TestFunction(kind="gaussian", width=8.0)
        tails = [spectral.kuznetsov_two_sides(1, 1, phi, fixture_forms,
                                              c_max=c).tail_estimate
                 for c in (25, 50)]
        assert tails[1] <= tails[0]


class TestBesselTransform:
    def test_linearity(self):
        class Doubled(spectral.ZWindow):
            def __call__(self, u):
                return 2.0 * super().__call__(u)

        base = spectral.bessel_transform_check(1600.0, 40.0, 0.009)
        dbl = spectral.bessel_transform_check(
            1600.0, 40.0, 0.009, Doubled(alpha=0.009, T=40.0))
        assert dbl.direct == pytest.approx(2 * base.direct, rel=1e-10)
        assert dbl.stationary_phase == pytest.approx(2 * base.stationary_phase, rel=1e-10)

    def test_stationary_phase_regime(self):
        res = spectral.bessel_transform_check(1600.0, 40.0, 0.009)
        # both sides are purely imaginary and agree within the envelope
        assert abs(res.direct.real) < 1e-10 * abs(res.direct)
        assert res.fitted_constant < 100.0
        assert res.difference < 0.01 * abs(res.direct)

    def test_small_argument_suppression(self):
        Z = spectral.ZWindow(alpha=0.0099, T=1000.0, kind="gaussian_core", sigma=0.0298)
        res = spectral.bessel_transform_check(1000.0, 1000.0, 0.0099, Z)
        assert abs(res.stationary_phase) < 1e-8 * res.scale
        assert abs(res.direct) < 1e-8 * res.scale


class TestDiagonal:
    def test_bracket_rate(self):
        devs = {T: abs(spectral.bracket_factor(T) - 2.0) for T in (100.0, 400.0)}
        assert devs[100.0] <= 10.0 / 100.0
        assert devs[400.0] <= 10.0 / 400.0
        # documented O(1/T): roughly 4x reduction per 4x height
        assert 2.5 <= devs[100.0] / devs[400.0] <= 6.0

    def test_arcsine_normalization(self):
        assert spectral.arcsine_normalization(7.3) == pytest.approx(
            math.pi / 2, abs=1e-12)

    def test_total_diagonal_trend(self):
        devs = {}
        for T in (50.0, 400.0):
            bump = weights.Bump(B=2.0, alpha=0.009, T=T)
            d = spectral.diagonal_main_terms(T, bump)
            devs[T] = abs(abs(d.total) / d.prediction - 1.0)
        assert devs[400.0] < 0.2
        assert devs[400.0] < devs[50.0]

    def test_assembly_collapses_to_bracket(self):
        T = 100.0
        bump = weights.Bump(B=2.0, alpha=0.009, T=T)
        d = spectral.diagonal_main_terms(T, bump)
        expected = bump.hhat0 * (12.0 / math.pi) * math.log(T) ** 2 * d.bracket_factor
        assert d.total == pytest.approx(expected, rel=1e-10)


class TestPredictionLedger:
    def test_exact_combination(self):
        bump = weights.Bump(B=2.0, alpha=0.009, T=100.0)
        led = spectral.prediction_ledger(100.0, bump)
        assert led.combined == Fraction(36)
        assert led.matches
        assert 12 + 48 + 24 - 2 * 24 == 36

    def test_negative_control(self):
        bump = weights.Bump(B=2.0, alpha=0.009, T=100.0)
        led = spectral.prediction_ledger(100.0, bump,
                                         cross_coefficient=Fraction(23))
        assert not led.matches

    def test_window_norm_numeric_positive(self):
        val = moments.h_window_norm_sq(SpectralSetup(T=10.0, A=2.0))
        bump = weights.Bump(B=2.0, alpha=0.009, T=10.0)
        led = spectral.prediction_ledger(10.0, bump, h_window_norm=val)
        assert led.h_window_norm_numeric > 0
        assert np.isfinite(led.h_window_norm_numeric)
