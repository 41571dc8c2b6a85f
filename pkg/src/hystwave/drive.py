"""Loading paths ell(t) driving the constrained mean.

Each drive exposes ``ell``, ``elldot``, and ``breakpoints(t0, t1)``.
Breakpoints are the times in (t0, t1) where ``elldot`` changes sign or is
not smooth; between consecutive breakpoints ``ell`` is strictly monotone
(or constant), which the event-exact limit integrator relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import math

import numpy as np

__all__ = [
    "DrivePath",
    "LinearDrive",
    "SinusoidalDrive",
    "PiecewiseLinearDrive",
    "ReparametrizedDrive",
]


class DrivePath:
    """Interface for loading paths; concrete drives are dataclasses."""

    def ell(self, t: float) -> float:
        raise NotImplementedError

    def elldot(self, t: float) -> float:
        raise NotImplementedError

    def breakpoints(self, t0: float, t1: float):
        """Sorted times in (t0, t1) where elldot changes sign or kinks."""
        raise NotImplementedError


@dataclass(frozen=True)
class LinearDrive(DrivePath):
    """ell(t) = offset + rate * t."""

    rate: float
    offset: float = 0.0

    def ell(self, t):
        return self.offset + self.rate * t

    def elldot(self, t):
        return self.rate

    def breakpoints(self, t0, t1):
        return []


@dataclass(frozen=True)
class SinusoidalDrive(DrivePath):
    """ell(t) = amplitude * sin(frequency * t + phase)."""

    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0

    def ell(self, t):
        return self.amplitude * math.sin(self.frequency * t + self.phase)

    def elldot(self, t):
        return self.amplitude * self.frequency * math.cos(self.frequency * t + self.phase)

    def breakpoints(self, t0, t1):
        # extrema where cos(frequency t + phase) = 0
        if self.frequency == 0.0 or self.amplitude == 0.0:
            return []
        k0 = math.ceil((self.frequency * t0 + self.phase) / math.pi - 0.5)
        out = []
        k = k0
        while True:
            t = ((k + 0.5) * math.pi - self.phase) / self.frequency
            if t >= t1:
                break
            if t > t0:
                out.append(t)
            k += 1
        return out


@dataclass(frozen=True)
class PiecewiseLinearDrive(DrivePath):
    """Linear interpolation through knots [(t0, l0), (t1, l1), ...].

    Constant extrapolation outside the knot range.
    """

    knots: tuple

    def __post_init__(self):
        ts = [k[0] for k in self.knots]
        if len(ts) < 2 or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("need at least two knots with strictly increasing times")

    def _arrays(self):
        ts = np.array([k[0] for k in self.knots])
        ls = np.array([k[1] for k in self.knots])
        return ts, ls

    def ell(self, t):
        ts, ls = self._arrays()
        return float(np.interp(t, ts, ls))

    def elldot(self, t):
        ts, ls = self._arrays()
        if t <= ts[0] or t >= ts[-1]:
            return 0.0
        i = int(np.searchsorted(ts, t, side="right") - 1)
        return float((ls[i + 1] - ls[i]) / (ts[i + 1] - ts[i]))

    def breakpoints(self, t0, t1):
        ts, _ = self._arrays()
        return [float(t) for t in ts if t0 < t < t1]


@dataclass(frozen=True)
class ReparametrizedDrive(DrivePath):
    """Base drive run through an increasing time warp, ell(phi(t)).

    ``phi_inv`` must invert ``phi`` on the interval of interest; it is
    used to pull the base drive's breakpoints back to warped time.
    """

    base: DrivePath
    phi: Callable[[float], float]
    phidot: Callable[[float], float]
    phi_inv: Callable[[float], float]

    def ell(self, t):
        return self.base.ell(self.phi(t))

    def elldot(self, t):
        return self.base.elldot(self.phi(t)) * self.phidot(t)

    def breakpoints(self, t0, t1):
        inner = self.base.breakpoints(self.phi(t0), self.phi(t1))
        out = [self.phi_inv(s) for s in inner]
        # phidot zeros also stall the drive; callers with vanishing warp
        # speed inside the window should list them via the base knots
        return sorted(t for t in out if t0 < t < t1)
