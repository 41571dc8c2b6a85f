"""Constitutive laws, parameters, phases, and energy accounting.

All functions take a :class:`ModelParams` explicitly so that parameter
sweeps can run concurrently without shared state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "Phase",
    "EnergyReport",
    "hprime",
    "hpotential",
    "theta",
    "classify",
    "phase_masks",
    "energy_report",
]


@dataclass(frozen=True)
class ModelParams:
    """Model parameters.

    Parameters
    ----------
    kappa : float
        Half-width of the spinodal interval, strictly between 0 and 1.
        The endpoint values are degenerate and rejected; the reduced
        kappa=0 wave profile is available through
        :func:`hystwave.wave.bilinear_profile`, which does not construct
        a ModelParams.
    delta : float
        Strength of the linear quenched bias, strictly positive.
    tau : float
        Relaxation time of a single unit, strictly positive.
    """

    kappa: float
    delta: float
    tau: float

    def __post_init__(self):
        if not (0.0 < self.kappa < 1.0):
            raise ValueError(f"kappa must lie in (0, 1), got {self.kappa}")
        if not self.delta > 0.0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.tau > 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")


class Phase(enum.Enum):
    """Stability phase of a single unit.

    Boundary ties x = +/-kappa belong to the outer phases, so the
    spinodal set is open and interface positions are well defined as
    first/last crossings.
    """

    Minus = "Minus"
    Spinodal = "Spinodal"
    Plus = "Plus"


@dataclass(frozen=True)
class EnergyReport:
    """Energy functional, dissipation, and external power at one instant."""

    energy: float
    dissipation: float
    power: float


def hprime(x, params: ModelParams):
    """Trilinear restoring force H'(x).

    Returns x+1 on the left branch (x <= -kappa), -((1-kappa)/kappa) x
    inside the spinodal (|x| <= kappa), and x-1 on the right branch.
    Continuous at the kinks; accepts scalars or arrays.
    """
    k = params.kappa
    x = np.asarray(x, dtype=float)
    slope = -(1.0 - k) / k
    out = np.where(x <= -k, x + 1.0, np.where(x >= k, x - 1.0, slope * x))
    return out if out.ndim else float(out)


def hpotential(x, params: ModelParams):
    """Piecewise quadratic double-well potential H(x).

    0.5 (x+1)^2 left of the spinodal, 0.5 ((1-kappa)/kappa)(kappa - x^2)
    inside, 0.5 (x-1)^2 right of it.  Its derivative is :func:`hprime`
    away from the kinks.
    """
    k = params.kappa
    x = np.asarray(x, dtype=float)
    mid = 0.5 * ((1.0 - k) / k) * (k - x * x)
    out = np.where(x <= -k, 0.5 * (x + 1.0) ** 2, np.where(x >= k, 0.5 * (x - 1.0) ** 2, mid))
    return out if out.ndim else float(out)


def theta(p, params: ModelParams):
    """Quenched bias of the unit at label p in [0, 1], delta * (p - 1/2).

    Zero mean over the unit interval.  Labels outside [0, 1] are rejected.
    """
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("unit label p must lie in [0, 1]")
    out = params.delta * (p - 0.5)
    return out if out.ndim else float(out)


def classify(x: float, params: ModelParams) -> Phase:
    """Phase of a single value; ties at +/-kappa go to the outer phases."""
    if x <= -params.kappa:
        return Phase.Minus
    if x >= params.kappa:
        return Phase.Plus
    return Phase.Spinodal


def phase_masks(x: np.ndarray, params: ModelParams):
    """Boolean masks (minus, spinodal, plus) for an array of states."""
    k = params.kappa
    minus = x <= -k
    plus = x >= k
    return minus, ~(minus | plus), plus


def energy_report(state, params: ModelParams, sigma: float, elldot: float) -> EnergyReport:
    """Energy, dissipation, and loading power of a particle state.

    Uses the midpoint rule on the state's grid, the same quadrature the
    integrator uses for the multiplier, so the three quantities satisfy
    the discrete energy balance of the scheme.

    Parameters
    ----------
    state : ParticleState
        Any object with ``pgrid`` and ``x`` arrays.
    sigma : float
        Current mean-field multiplier.
    elldot : float
        Current loading rate; ``power`` is ``sigma * elldot``.
    """
    th = theta(state.pgrid, params)
    energy = float(np.mean(hpotential(state.x, params) - th * state.x))
    resid = th + sigma - hprime(state.x, params)
    dissipation = float(np.mean(resid * resid))
    return EnergyReport(energy=energy, dissipation=dissipation, power=float(sigma * elldot))
