"""Closed-form traveling interfaces: width equation, profiles, drive.

A wave moving at speed omega != 0 has a spinodal interval [xi_lo, xi_hi]
whose width solves a transcendental balance between the affine outer
branches and the exponential spinodal transit.  The speed fixes the width
but not the position; the position is a free centering parameter.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .drive import DrivePath
from .errors import InterfaceOutOfDomain, NoConvergence
from .model import ModelParams

__all__ = [
    "Direction",
    "TravelingWave",
    "solve_width",
    "width_asymptotic",
    "build_wave",
    "eval_profile",
    "eval_profile_deriv",
    "wave_drive",
    "WaveDriveValue",
    "WaveDrive",
    "bilinear_profile",
]

# exponents beyond this are replaced by their affine envelope limit
_EXP_CLIP = 700.0


class Direction(enum.Enum):
    Left = "Left"
    Right = "Right"


@dataclass(frozen=True)
class TravelingWave:
    """Immutable wave record; use :func:`build_wave` to construct one."""

    params: ModelParams
    omega: float
    xi_lo: float
    xi_hi: float
    sigma0: float
    direction: Direction

    @property
    def width(self) -> float:
        return self.xi_hi - self.xi_lo

    @property
    def center(self) -> float:
        return 0.5 * (self.xi_lo + self.xi_hi)


def _width_terms(params: ModelParams, omega: float):
    k = params.kappa
    to = params.tau * abs(omega)
    a = (1.0 - k) / (k * to)  # exponential rate
    b = 2.0 * (1.0 - k) ** 2 / (to * params.delta)  # constant term
    c = (1.0 - k) / to  # linear term
    return a, b, c


def solve_width(params: ModelParams, omega: float) -> float:
    """Unique positive interface width for a wave at speed omega.

    Solves exp(a w) - 1 = b + c w with a = (1-kappa)/(kappa tau |omega|),
    b = 2 (1-kappa)^2/(tau |omega| delta), c = (1-kappa)/(tau |omega|),
    to a relative tolerance of 1e-12 (bisection bracket plus Newton
    polish on the overflow-safe log form).
    """
    if omega == 0.0:
        raise ValueError("omega must be nonzero; standing interfaces have no width scale")
    a, b, c = _width_terms(params, omega)

    # g(w) = a w - log1p(b + c w) shares the positive root and never overflows
    def g(w):
        return a * w - math.log1p(b + c * w)

    def gprime(w):
        return a - c / (1.0 + b + c * w)

    hi = (math.log1p(b) + 10.0) / a
    lo = 0.0
    glo, ghi = g(lo), g(hi)
    for _ in range(200):
        if ghi > 0.0:
            break
        hi *= 2.0
        ghi = g(hi)
    else:
        raise NoConvergence(f"no sign change: bracket=({lo}, {hi}), g=({glo}, {ghi})")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-13 * hi:
            break
    w = 0.5 * (lo + hi)
    for _ in range(8):
        dw = g(w) / gprime(w)
        w -= dw
        if abs(dw) <= 1e-15 * w:
            break
    if not (w > 0.0 and math.isfinite(w)):
        raise NoConvergence(f"polish diverged: bracket=({lo}, {hi}), w={w}")
    return w


def width_asymptotic(params: ModelParams, omega: float) -> float:
    """Small-relaxation approximation of the width,
    (kappa tau |omega|/(1-kappa)) * ln(2 (1-kappa)^2/(tau |omega| delta)).

    Not defined as the argument of the logarithm reaches 1 from above;
    meaningful for small tau |omega|.
    """
    k = params.kappa
    to = params.tau * abs(omega)
    return (k * to / (1.0 - k)) * math.log(2.0 * (1.0 - k) ** 2 / (to * params.delta))


def _width_residual_ok(params: ModelParams, omega: float, w: float) -> bool:
    a, b, c = _width_terms(params, omega)
    lhs = math.expm1(a * w)
    rhs = b + c * w
    return abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(rhs))


def build_wave(params: ModelParams, omega: float, xi_center: float = 0.5) -> TravelingWave:
    """Construct the wave of speed omega centered at xi_center.

    xi_lo/xi_hi are xi_center -/+ half the width from :func:`solve_width`;
    the multiplier offset is 1 - kappa - tau omega delta - delta xi_lo for
    a left-moving wave (omega < 0) and -1 + kappa - tau omega delta
    - delta xi_hi for a right-moving one.
    """
    if omega == 0.0:
        raise ValueError("omega must be nonzero")
    w = solve_width(params, omega)
    if not _width_residual_ok(params, omega, w):
        raise NoConvergence(f"width residual check failed at w={w}")
    xi_lo = xi_center - 0.5 * w
    xi_hi = xi_center + 0.5 * w
    d = params.delta
    if omega < 0.0:
        sigma0 = 1.0 - params.kappa - params.tau * omega * d - d * xi_lo
        direction = Direction.Left
    else:
        sigma0 = -1.0 + params.kappa - params.tau * omega * d - d * xi_hi
        direction = Direction.Right
    wave = TravelingWave(
        params=params, omega=omega, xi_lo=xi_lo, xi_hi=xi_hi, sigma0=sigma0, direction=direction
    )
    # matching at the non-anchored spinodal end follows from the width
    # equation; verify both ends to the construction tolerance
    for pt, val in ((xi_lo, -params.kappa), (xi_hi, params.kappa)):
        if abs(eval_profile(wave, pt) - val) > 1e-10:
            raise NoConvergence(f"matching failed at P={pt}")
    return wave


def _exp_safe(z):
    return np.exp(np.clip(z, -_EXP_CLIP, _EXP_CLIP))


def eval_profile(wave: TravelingWave, P):
    """Evaluate the comoving profile X(P); accepts scalars or arrays."""
    params = wave.params
    k, d, tau, om = params.kappa, params.delta, params.tau, wave.omega
    lo, hi = wave.xi_lo, wave.xi_hi
    amp = 2.0 * (1.0 - k) + d * (hi - lo)
    P = np.asarray(P, dtype=float)
    out = np.empty_like(P)
    mid = (P >= lo) & (P <= hi)
    left = P < lo
    right = P > hi
    # spinodal branch, shared by both families up to the anchoring end
    r = -(1.0 - k) / (k * tau * om)  # positive for left waves, negative for right
    c1 = -k * d / (1.0 - k)
    c2 = -k * tau * om * d / (1.0 - k) ** 2
    if om < 0.0:
        out[left] = -k + d * (P[left] - lo)
        q = P[mid] - lo
        out[mid] = -k + c1 * q + c2 * (_exp_safe(r * q) - 1.0)
        q = P[right] - hi
        out[right] = k + d * q + amp * (1.0 - _exp_safe(q / (tau * om)))
    else:
        q = P[left] - lo
        out[left] = -k + d * q + amp * (_exp_safe(q / (tau * om)) - 1.0)
        q = P[mid] - hi
        out[mid] = k + c1 * q + c2 * (_exp_safe(r * q) - 1.0)
        q = P[right] - hi
        out[right] = k + d * q
    return out if out.ndim else float(out)


def eval_profile_deriv(wave: TravelingWave, P):
    """Analytic derivative X'(P) of the comoving profile."""
    params = wave.params
    k, d, tau, om = params.kappa, params.delta, params.tau, wave.omega
    lo, hi = wave.xi_lo, wave.xi_hi
    amp = 2.0 * (1.0 - k) + d * (hi - lo)
    P = np.asarray(P, dtype=float)
    out = np.empty_like(P)
    mid = (P >= lo) & (P <= hi)
    left = P < lo
    right = P > hi
    r = -(1.0 - k) / (k * tau * om)
    c1 = -k * d / (1.0 - k)
    c2 = -k * tau * om * d / (1.0 - k) ** 2
    if om < 0.0:
        out[left] = d
        q = P[mid] - lo
        out[mid] = c1 + c2 * r * _exp_safe(r * q)
        q = P[right] - hi
        out[right] = d - amp / (tau * om) * _exp_safe(q / (tau * om))
    else:
        q = P[left] - lo
        out[left] = d + amp / (tau * om) * _exp_safe(q / (tau * om))
        q = P[mid] - hi
        out[mid] = c1 + c2 * r * _exp_safe(r * q)
        out[right] = d
    return out if out.ndim else float(out)


def _antiderivative(wave: TravelingWave, P):
    """Antiderivative of the profile with reference point xi_lo."""
    params = wave.params
    k, d, tau, om = params.kappa, params.delta, params.tau, wave.omega
    lo, hi = wave.xi_lo, wave.xi_hi
    w = hi - lo
    amp = 2.0 * (1.0 - k) + d * w
    r = -(1.0 - k) / (k * tau * om)
    c1 = -k * d / (1.0 - k)
    c2 = -k * tau * om * d / (1.0 - k) ** 2
    s = 1.0 / (tau * om)
    P = np.asarray(P, dtype=float)
    out = np.empty_like(P)
    mid = (P >= lo) & (P <= hi)
    left = P < lo
    right = P > hi
    if om < 0.0:
        q = P[left] - lo
        out[left] = -k * q + 0.5 * d * q * q
        q = P[mid] - lo
        out[mid] = -k * q + 0.5 * c1 * q * q + c2 * ((_exp_safe(r * q) - 1.0) / r - q)
        g_hi = -k * w + 0.5 * c1 * w * w + c2 * ((_exp_safe(r * w) - 1.0) / r - w)
        q = P[right] - hi
        out[right] = g_hi + k * q + 0.5 * d * q * q + amp * (q - (_exp_safe(s * q) - 1.0) / s)
        return out if out.ndim else float(out)
    # right-moving family, reference still xi_lo
    q = P[left] - lo
    out[left] = -k * q + 0.5 * d * q * q + amp * ((_exp_safe(s * q) - 1.0) / s - q)
    # middle antiderivative anchored at xi_hi, then shifted to xi_lo
    def g_mid_from_hi(q):
        return k * q + 0.5 * c1 * q * q + c2 * ((_exp_safe(r * q) - 1.0) / r - q)

    off = -g_mid_from_hi(-w)
    q = P[mid] - hi
    out[mid] = g_mid_from_hi(q) + off
    g_hi = g_mid_from_hi(0.0) + off
    q = P[right] - hi
    out[right] = g_hi + k * q + 0.5 * d * q * q
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class WaveDriveValue:
    """Exact mean of the wave over the unit interval and its leading order."""

    exact: float
    leading_order: float


def wave_drive(wave: TravelingWave, t: float) -> WaveDriveValue:
    """Loading value consistent with the wave at time t.

    The exact value integrates the profile over labels p in [0, 1]
    (closed-form piecewise antiderivative).  The leading order is
    (2 - kappa + delta/2) - (2 + delta)(Xi + omega t) with Xi the
    interface center; the difference is O(tau ln(1/tau)).

    Raises InterfaceOutOfDomain once the comoving interface
    [xi_lo + omega t, xi_hi + omega t] leaves the open unit interval.
    """
    om = wave.omega
    if not (0.0 < wave.xi_lo + om * t and wave.xi_hi + om * t < 1.0):
        raise InterfaceOutOfDomain(
            f"interface [{wave.xi_lo + om * t}, {wave.xi_hi + om * t}] not inside (0, 1)"
        )
    a, b = -om * t, 1.0 - om * t
    exact = float(_antiderivative(wave, b) - _antiderivative(wave, a))
    d = wave.params.delta
    leading = (2.0 - wave.params.kappa + 0.5 * d) - (2.0 + d) * (wave.center + om * t)
    return WaveDriveValue(exact=exact, leading_order=leading)


@dataclass(frozen=True)
class WaveDrive(DrivePath):
    """Drive adapter so the simulator can be forced by a wave's own mean."""

    wave: TravelingWave

    def ell(self, t):
        return wave_drive(self.wave, t).exact

    def elldot(self, t):
        w, om = self.wave, self.wave.omega
        x_hi = eval_profile(w, 1.0 - om * t)
        x_lo = eval_profile(w, -om * t)
        return float(-om * (x_hi - x_lo))

    def breakpoints(self, t0, t1):
        return []


def bilinear_profile(delta: float, tau: float, omega: float, xi: float, P):
    """Reduced kappa = 0 wave profile with a single kink at xi.

    The spinodal interval collapses; the profile is delta (P - xi) plus a
    one-sided exponential tail of amplitude 2 on the trailing side.
    """
    if omega == 0.0:
        raise ValueError("omega must be nonzero")
    P = np.asarray(P, dtype=float)
    q = (P - xi) / (tau * omega)
    if omega < 0.0:
        tail = np.where(P > xi, 2.0 * (1.0 - _exp_safe(q)), 0.0)
    else:
        tail = np.where(P < xi, 2.0 * (_exp_safe(q) - 1.0), 0.0)
    out = delta * (P - xi) + tail
    return out if out.ndim else float(out)
