import numpy as np
import pytest
from hypothesis import given, strategies as st

from hystwave.drive import (
    LinearDrive,
    PiecewiseLinearDrive,
    ReparametrizedDrive,
    SinusoidalDrive,
)


def fd_check(drive, t, h=1e-6, tol=1e-5):
    fd = (drive.ell(t + h) - drive.ell(t - h)) / (2 * h)
    assert fd == pytest.approx(drive.elldot(t), abs=tol)


class TestLinearDrive:
    def test_values(self):
        d = LinearDrive(rate=2.0, offset=1.0)
        assert d.ell(0.0) == 1.0
        assert d.ell(3.0) == 7.0
        assert d.elldot(100.0) == 2.0

    def test_no_breakpoints(self):
        assert LinearDrive(rate=1.0).breakpoints(0.0, 10.0) == []


class TestSinusoidalDrive:
    @given(st.floats(0.1, 3.0), st.floats(0.2, 4.0), st.floats(-3, 3), st.floats(0, 10))
    def test_derivative(self, a, f, ph, t):
        d = SinusoidalDrive(amplitude=a, frequency=f, phase=ph)
        fd_check(d, t, tol=1e-4 * max(1.0, a * f))

    def test_breakpoints_are_extrema(self):
        d = SinusoidalDrive(amplitude=1.0, frequency=1.0)
        bps = d.breakpoints(0.0, 2 * np.pi)
        assert bps == pytest.approx([np.pi / 2, 3 * np.pi / 2])
        for b in bps:
            assert abs(d.elldot(b)) < 1e-12

    def test_breakpoints_respect_phase(self):
        d = SinusoidalDrive(amplitude=2.0, frequency=3.0, phase=0.4)
        for b in d.breakpoints(0.0, 5.0):
            assert abs(d.elldot(b)) < 1e-10
            assert 0.0 < b < 5.0


class TestPiecewiseLinearDrive:
    def test_interpolation(self):
        d = PiecewiseLinearDrive(knots=((0.0, 0.0), (1.0, 2.0), (3.0, -1.0)))
        assert d.ell(0.5) == pytest.approx(1.0)
        assert d.ell(2.0) == pytest.approx(0.5)
        assert d.elldot(0.5) == pytest.approx(2.0)
        assert d.elldot(2.0) == pytest.approx(-1.5)

    def test_constant_extrapolation(self):
        d = PiecewiseLinearDrive(knots=((0.0, 1.0), (1.0, 2.0)))
        assert d.ell(-5.0) == 1.0
        assert d.ell(5.0) == 2.0
        assert d.elldot(-5.0) == 0.0
        assert d.elldot(5.0) == 0.0

    def test_knots_are_breakpoints(self):
        d = PiecewiseLinearDrive(knots=((0.0, 0.0), (1.0, 2.0), (3.0, -1.0)))
        assert d.breakpoints(-1.0, 4.0) == [0.0, 1.0, 3.0]
        assert d.breakpoints(0.5, 2.0) == [1.0]

    def test_requires_increasing_times(self):
        with pytest.raises(ValueError):
            PiecewiseLinearDrive(knots=((1.0, 0.0), (0.0, 1.0)))
        with pytest.raises(ValueError):
            PiecewiseLinearDrive(knots=((0.0, 0.0),))


class TestReparametrizedDrive:
    def _warped_sin(self):
        base = SinusoidalDrive(amplitude=1.0, frequency=1.0)
        phi = lambda t: t ** 3 / np.pi ** 2
        phidot = lambda t: 3 * t ** 2 / np.pi ** 2
        phi_inv = lambda s: (np.pi ** 2 * s) ** (1.0 / 3.0)
        return base, ReparametrizedDrive(base=base, phi=phi, phidot=phidot, phi_inv=phi_inv)

    def test_values_match_composition(self):
        base, d = self._warped_sin()
        for t in (0.3, 1.0, 2.0):
            assert d.ell(t) == pytest.approx(base.ell(t ** 3 / np.pi ** 2))

    def test_chain_rule(self):
        _, d = self._warped_sin()
        for t in (0.5, 1.2, 2.5):
            fd_check(d, t, tol=1e-4)

    def test_breakpoints_pull_back(self):
        base, d = self._warped_sin()
        t_hi = np.pi * 2 ** (1.0 / 3.0)  # phi maps this to 2*pi
        bps = d.breakpoints(0.0, t_hi)
        base_bps = base.breakpoints(0.0, 2 * np.pi)
        assert len(bps) == len(base_bps)
        for b, s in zip(bps, base_bps):
            assert b ** 3 / np.pi ** 2 == pytest.approx(s, abs=1e-10)
