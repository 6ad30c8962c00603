"""Spectral and Routh-Hurwitz stability verdicts."""

import logging

import numpy as np
import pytest

from optomech import model
from optomech.stability import (
    MARGINAL_TOLERANCE,
    check_stability,
    routh_hurwitz_coeffs,
)

FIG4A_BASE = dict(omega_m=1.0, gamma_m=1e-5, kappa1=0.5, kappa2=0.5,
                  omega_eff1=-1.0, omega_eff2=-1.0, chi2=0.01, eta=0.01,
                  n_th=20.0)


def random_params(rng):
    return model.EffectiveParams(
        gamma_m=rng.uniform(0.0, 2.0),
        kappa1=rng.uniform(0.05, 2.0),
        kappa2=rng.uniform(0.05, 2.0),
        omega_eff1=rng.uniform(-5.0, 5.0),
        omega_eff2=rng.uniform(-5.0, 5.0),
        chi1=rng.uniform(0.0, 2.0),
        chi2=rng.uniform(0.0, 2.0),
        eta=rng.uniform(0.0, 2.0),
    )


class TestCoefficients:
    def test_all_couplings_zero_at_zero_detuning(self):
        p = model.EffectiveParams(gamma_m=0.3, kappa1=0.7, kappa2=1.3)
        a = routh_hurwitz_coeffs(p)
        assert a[6] == 1.0
        assert a[0] == pytest.approx(0.7**2 * 1.3**2 / 16.0, rel=1e-12)

    def test_a5_is_total_damping(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            p = random_params(rng)
            a5 = routh_hurwitz_coeffs(p)[5]
            assert a5 == pytest.approx(p.gamma_m + p.kappa1 + p.kappa2, rel=1e-15)

    def test_matches_characteristic_polynomial_fig2a(self):
        p = model.EffectiveParams(gamma_m=1e-5, kappa1=1.0, kappa2=0.5,
                                  omega_eff1=-1.0, omega_eff2=-1.0,
                                  chi1=0.1, chi2=0.9, eta=0.8, n_th=20.0)
        closed = np.array(routh_hurwitz_coeffs(p))[::-1]
        numeric = np.poly(model.build_drift(p))
        scale = np.maximum(np.abs(closed), np.abs(numeric))
        assert (np.abs(closed - numeric) <= 1e-8 * scale).all()

    def test_matches_characteristic_polynomial_random(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            p = random_params(rng)
            closed = np.array(routh_hurwitz_coeffs(p))[::-1]
            numeric = np.poly(model.build_drift(p))
            floor = 1e-12 * np.abs(numeric).max()
            scale = np.maximum(np.maximum(np.abs(closed), np.abs(numeric)), floor)
            assert (np.abs(closed - numeric) <= 1e-6 * scale).all()


class TestCheckStability:
    def test_decoupled_damped_system_is_stable(self):
        p = model.EffectiveParams(gamma_m=0.1, kappa1=0.6, kappa2=0.8,
                                  omega_eff1=1.0, omega_eff2=1.0)
        report = check_stability(p)
        assert report.eigen_stable
        assert not report.marginal
        # slowest pole of three decoupled damped oscillators
        assert report.max_real_part == pytest.approx(
            max(-0.1 / 2, -0.6 / 2, -0.8 / 2), rel=1e-9)

    def test_fig4a_plotted_range_is_stable(self):
        for chi1 in np.linspace(0.0, 1.0, 21):
            report = check_stability(model.EffectiveParams(chi1=chi1, **FIG4A_BASE))
            assert report.eigen_stable, f"unstable at chi1={chi1}"

    def test_large_chi1_destabilizes_and_bisection_is_well_posed(self):
        def max_real(chi1):
            return check_stability(
                model.EffectiveParams(chi1=chi1, **FIG4A_BASE)).max_real_part

        lo, hi = 1.0, 1.5
        assert max_real(lo) < 0.0 < max_real(hi)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if max_real(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        threshold = 0.5 * (lo + hi)
        assert 1.0 < threshold < 1.5
        assert max_real(threshold - 1e-6) < 0.0 < max_real(threshold + 1e-6)

    def test_report_field_consistency(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            report = check_stability(random_params(rng))
            assert report.rh_pass == (report.s1 > 0.0 and report.s2 > 0.0)
            assert report.eigen_stable == (report.max_real_part < 0.0)
            assert len(report.coefficients) == 7
            assert report.coefficients[6] == 1.0
            assert report.s1 == report.coefficients[0]

    def test_undamped_mechanics_is_marginal(self):
        p = model.EffectiveParams(gamma_m=0.0, kappa1=1.0, kappa2=1.0,
                                  omega_eff1=-1.0, omega_eff2=-1.0)
        report = check_stability(p)
        assert report.marginal
        assert abs(report.max_real_part) < MARGINAL_TOLERANCE

    def test_hurwitz_pass_with_unstable_spectrum_is_logged(self, caplog):
        # regime where minors beyond S1, S2 decide: both expressions positive
        # yet an eigenvalue crosses into the right half-plane
        p = model.EffectiveParams(
            omega_m=1.0, gamma_m=0.249109411670567,
            kappa1=0.6122449761647764, kappa2=1.192939976384829,
            omega_eff1=0.5409050217326783, omega_eff2=3.097107759127777,
            chi1=1.1209519040123717, chi2=0.576842428862421,
            eta=0.8257926853617854,
        )
        with caplog.at_level(logging.INFO, logger="optomech.stability"):
            report = check_stability(p)
        assert report.rh_pass and not report.eigen_stable
        assert any("spectrum unstable" in r.message for r in caplog.records)
