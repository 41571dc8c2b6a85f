import cmath
import math

import numpy as np
import pytest

from hystwave.errors import (
    DegenerateDenominator,
    ExcludedPoint,
    NotCoupled,
    WindowTooCoarse,
)
from hystwave.model import ModelParams
from hystwave.spectral import (
    SpectralClass,
    SpectralProblem,
    asymptotic_real_part,
    asymptotic_roots,
    build_eigenfunction,
    char_minus,
    char_plus,
    ep_residual,
    find_spectrum,
    instability_verdict,
    lambda_of_mu,
    mu_of_lambda,
    rescaled_char,
    rescaled_rhs,
    s_zero_line,
    thm2_sign_resolution,
)
from hystwave.wave import solve_width

# reference problem used throughout: moderate relaxation, symmetric well
P_REF = ModelParams(kappa=0.5, delta=1.0, tau=1e-2)


@pytest.fixture(scope="module")
def prob():
    return SpectralProblem.from_wave(P_REF, -1.0)


@pytest.fixture(scope="module")
def spectrum(prob):
    return find_spectrum(prob)


def bisect_real(f, lo, hi, n=200):
    flo = f(lo)
    assert flo * f(hi) < 0.0
    for _ in range(n):
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestProblem:
    def test_coupled_width(self, prob):
        assert prob.coupled
        assert prob.half_width == pytest.approx(0.5 * 0.0397000893898, rel=1e-9)
        assert prob.q == pytest.approx(0.005)
        assert prob.epsilon == pytest.approx(0.2518886016052035, rel=1e-13)
        assert prob.excluded_tau_lambda == pytest.approx(1.0)

    def test_coupled_flag_is_checked(self):
        with pytest.raises(ValueError):
            SpectralProblem(params=P_REF, omega=-1.0, half_width=0.3, coupled=True)
        free = SpectralProblem.with_free_width(P_REF, -1.0, 0.3)
        assert not free.coupled

    def test_rejects_zero_speed(self):
        with pytest.raises(ValueError):
            SpectralProblem.with_free_width(P_REF, 0.0, 0.1)


class TestCharacteristic:
    def test_first_rung_frozen(self, prob):
        # independently confirmed by the eigenpair residual oracle below
        lam = complex(-5.83613987272214, 97.6666172244244)
        assert abs(char_plus(prob, lam)) < 1e-11

    def test_excluded_point_is_a_zero(self, prob):
        assert abs(char_plus(prob, prob.excluded_tau_lambda / P_REF.tau)) == 0.0

    def test_conjugate_values(self, prob):
        lam = complex(3.0, 41.0)
        assert char_plus(prob, lam.conjugate()) == pytest.approx(
            char_plus(prob, lam).conjugate(), rel=1e-14
        )
        lam = complex(-150.0, 12.0)
        assert char_minus(prob, lam.conjugate()) == pytest.approx(
            char_minus(prob, lam).conjugate(), rel=1e-14
        )

    def test_sminus_real_root_against_bisection(self, prob):
        # the only real-axis sign change of the S-minus function in (-8, -1)
        root = bisect_real(
            lambda L: char_minus(prob, L / P_REF.tau).real, -1.2, -1.0000001
        )
        assert root == pytest.approx(-1.0103012588190854, abs=1e-12)
        Ls = np.linspace(-8.0, -1.2, 20001)
        vals = np.array([char_minus(prob, L / P_REF.tau).real for L in Ls])
        assert np.all(np.sign(vals[:-1]) * np.sign(vals[1:]) > 0)


class TestFindSpectrum:
    def test_default_window_roots(self, spectrum):
        splus = [s for s in spectrum if s.cls is SpectralClass.SPlus]
        assert len(splus) == 6
        first = min(
            (s for s in splus if s.lam.imag > 0), key=lambda s: abs(s.tau_lambda)
        )
        assert first.lam.real == pytest.approx(-5.83613987272214, rel=1e-10)
        assert first.lam.imag == pytest.approx(97.6666172244244, rel=1e-10)
        assert all(s.residual < 1e-10 for s in splus)
        assert all(not s.clustered for s in splus)

    def test_conjugate_symmetry(self, spectrum):
        for s in spectrum:
            if s.tau_lambda.imag > 1e-8:
                mirror = s.tau_lambda.conjugate()
                assert any(
                    abs(o.tau_lambda - mirror) < 1e-12 for o in spectrum
                ), s.tau_lambda

    def test_sorted_output(self, spectrum):
        keys = [(s.tau_lambda.real, s.tau_lambda.imag) for s in spectrum]
        assert keys == sorted(keys)

    def test_excluded_point_not_reported(self, prob):
        pts = find_spectrum(prob, window=(-1.0 + 1e-6, 4.0, -1.0, 1.0), grid=(60, 30))
        excl = prob.excluded_tau_lambda
        assert all(abs(s.tau_lambda - excl) > 1e-5 for s in pts)

    def test_wide_window_includes_sminus(self, prob):
        pts = find_spectrum(prob, window=(-2.0, 0.0, -1.0, 1.0), grid=(40, 30))
        real_minus = [
            s for s in pts
            if s.cls is SpectralClass.SMinus and abs(s.tau_lambda.imag) < 1e-9
        ]
        assert len(real_minus) == 1
        assert real_minus[0].tau_lambda.real == pytest.approx(
            -1.0103012588190854, abs=1e-10
        )

    def test_grid_doubling_stable(self, prob):
        win = (-1.0 + 1e-6, 1.5, -5.0, 5.0)
        a = find_spectrum(prob, window=win, grid=(40, 40))
        b = find_spectrum(prob, window=win, grid=(80, 80))
        la = sorted((s.tau_lambda for s in a), key=lambda z: (z.real, z.imag))
        lb = sorted((s.tau_lambda for s in b), key=lambda z: (z.real, z.imag))
        assert len(la) == len(lb)
        assert all(abs(x - y) < 1e-9 for x, y in zip(la, lb))

    def test_coarse_imaginary_grid_rejected(self, prob):
        with pytest.raises(WindowTooCoarse):
            find_spectrum(prob, grid=(80, 4))

    def test_bad_window_rejected(self, prob):
        with pytest.raises(ValueError):
            find_spectrum(prob, window=(1.0, 0.0, -1.0, 1.0))

    def test_s_zero_line_record(self, prob):
        rec = s_zero_line(prob)
        assert rec["re_tau_lambda"] == -1.0
        assert rec["re_lambda"] == pytest.approx(-100.0)


class TestEigenfunctions:
    def test_residual_discriminates_eigenvalues(self, prob, spectrum):
        first = min(
            (s for s in spectrum if s.cls is SpectralClass.SPlus and s.lam.imag > 0),
            key=lambda s: abs(s.tau_lambda),
        )
        at_root = ep_residual(prob, first)
        off_root = ep_residual(prob, first.lam + 1e-3)
        assert at_root < 1e-10
        assert off_root > 1e-5
        assert off_root / at_root > 1e6

    def test_all_default_roots_admit_eigenfunctions(self, prob, spectrum):
        for s in spectrum:
            assert ep_residual(prob, s) < 1e-10, s.tau_lambda

    def test_s_minus_eigenfunction(self, prob):
        lam = -1.0103012588190854 / P_REF.tau
        ef = build_eigenfunction(prob, lam)
        assert ef.case == "s_minus"
        assert ef.c_minus == 0.0
        assert ep_residual(prob, lam, ef) < 1e-10

    def test_s_zero_oscillatory_eigenfunction(self, prob):
        # any point on the continuous-spectrum line admits a bounded mode
        for im in (0.3, 0.7, 1.9):
            lam = complex(-1.0, im * prob.epsilon) / P_REF.tau
            ef = build_eigenfunction(prob, lam)
            assert ef.case == "s_zero_oscillatory"
            assert ep_residual(prob, lam, ef) < 1e-10

    def test_s_zero_linear_eigenfunction(self, prob):
        lam = -1.0 / P_REF.tau
        ef = build_eigenfunction(prob, lam)
        assert ef.case == "s_zero_linear"
        assert ep_residual(prob, lam, ef) < 1e-10

    def test_s_plus_outer_decay(self, prob, spectrum):
        first = min(
            (s for s in spectrum if s.cls is SpectralClass.SPlus and s.lam.imag > 0),
            key=lambda s: abs(s.tau_lambda),
        )
        ef = build_eigenfunction(prob, first)
        assert ef.c_plus == 0.0
        W = prob.half_width
        far = np.abs(ef.evaluate([-20 * W, 20 * W]))
        near = np.abs(ef.evaluate([0.0]))[0]
        assert near > 0.0
        # bounded tails: the outer pieces approach -zeta/a
        a = P_REF.kappa * (P_REF.tau * first.lam + 1.0)
        assert far[0] == pytest.approx(abs(1.0 / a), rel=1e-6)

    def test_reflection_between_families(self):
        neg = SpectralProblem.from_wave(P_REF, -1.0)
        pos = SpectralProblem.from_wave(P_REF, 1.0)
        lam = complex(-5.83613987272214, 97.6666172244244)
        assert abs(char_plus(pos, lam)) < 1e-11  # speeds enter through |omega|
        ef_n = build_eigenfunction(neg, lam)
        ef_p = build_eigenfunction(pos, lam)
        P = np.linspace(-0.1, 0.1, 401)
        assert np.allclose(ef_n.evaluate(P), ef_p.evaluate(-P), rtol=0, atol=1e-12)
        assert np.allclose(ef_n.derivative(P), -ef_p.derivative(-P), rtol=0, atol=1e-12)
        assert ep_residual(pos, lam, ef_p) < 1e-10

    def test_excluded_point_raises(self, prob):
        with pytest.raises(ExcludedPoint):
            build_eigenfunction(prob, prob.excluded_tau_lambda / P_REF.tau)

    def test_degenerate_denominator_raises(self, prob):
        with pytest.raises(DegenerateDenominator):
            build_eigenfunction(prob, (-1.0 + 1e-13) / P_REF.tau)


class TestRescaled:
    def test_round_trip(self, prob):
        lam = complex(-5.83613987272214, 97.6666172244244)
        mu = mu_of_lambda(prob, lam)
        assert abs(lambda_of_mu(prob, mu) - lam) < 1e-12 * abs(lam)
        # rescaled characteristic vanishes exactly where char_plus does
        assert abs(rescaled_char(prob, mu)) < 1e-12

    def test_rhs_at_origin(self, prob):
        assert rescaled_rhs(prob, 0.0).real == pytest.approx(-2.406768804293448, rel=1e-12)
        assert rescaled_rhs(prob, 0.0).imag == 0.0
        assert asymptotic_real_part(prob) == pytest.approx(0.8782851027932082, rel=1e-12)

    def test_free_width_not_coupled(self):
        free = SpectralProblem.with_free_width(P_REF, -1.0, 0.02)
        with pytest.raises(NotCoupled):
            rescaled_rhs(free, 0.0)
        with pytest.raises(NotCoupled):
            asymptotic_real_part(free)

    def test_asymptotic_real_part_tends_to_log_two_over_delta(self):
        for delta, target in ((1.0, math.log(2.0)), (3.0, math.log(2.0 / 3.0))):
            devs = []
            for tau in (1e-2, 1e-3, 1e-4):
                pr = SpectralProblem.from_wave(
                    ModelParams(kappa=0.5, delta=delta, tau=tau), 1.0
                )
                devs.append(abs(asymptotic_real_part(pr) - target))
            assert devs[0] > devs[1] > devs[2]

    def test_asymptotic_roots_ladder(self, prob):
        roots = asymptotic_roots(prob, count=4)
        r = asymptotic_real_part(prob)
        assert [z.real for z in roots] == [r] * 4
        assert [z.imag for z in roots] == [math.pi * (2 * j + 1) for j in range(4)]


class TestVerdict:
    def test_moderate_relaxation_stable_despite_asymptotics(self):
        v = instability_verdict(P_REF, -1.0)
        assert v.kind == "Stable"
        assert v.asymptotic_stability == "unstable"
        assert v.n_splus_roots == 6
        assert v.max_re_tau_lambda == pytest.approx(-0.0583613987272214, rel=1e-9)

    def test_small_relaxation_weak_disorder_unstable(self):
        v = instability_verdict(ModelParams(kappa=0.5, delta=0.5, tau=1e-3), -1.0)
        assert v.kind == "Unstable"
        assert v.asymptotic_stability == "unstable"
        assert v.max_re_tau_lambda == pytest.approx(0.1639062168428357, rel=1e-8)

    def test_strong_disorder_stable(self):
        v = instability_verdict(ModelParams(kappa=0.5, delta=3.0, tau=1e-2), -1.0)
        assert v.kind == "Stable"
        assert v.asymptotic_stability == "stable"
        assert v.max_re_tau_lambda < 0.0


class TestSignResolution:
    def test_plus_form_admits_eigenpairs(self, prob):
        rec = thm2_sign_resolution(prob, n_pairs=5)
        assert rec["sign"] == "+2W"
        assert rec["plus_n"] >= 5
        assert rec["plus_max_residual"] < 1e-8
        assert rec["minus_n"] >= 1
        assert rec["minus_min_residual"] > 1e-3
