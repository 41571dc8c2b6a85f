"""Numerical toolkit for a constrained mean-field ensemble of bistable units.

The model couples N identical bistable units through a Lagrange multiplier
that enforces a prescribed mean, with a linear quenched bias distinguishing
the units.  The package provides

* ``model``     constitutive laws, phase classification, energy accounting
* ``drive``     loading paths (linear, sinusoidal, piecewise linear)
* ``particle``  time integration of the constrained ensemble
* ``wave``      closed-form traveling-wave construction
* ``spectral``  point/continuous spectrum of the linearization around a wave
* ``limit``     the rate-independent quasistatic limit model
* ``metrics``   comparison metrics (oscillation strength, Hausdorff distance)
* ``cli``       the ``hystwave`` command-line front end
"""

__version__ = "0.1.0"

from .model import ModelParams, Phase, EnergyReport, hprime, hpotential, theta, classify, energy_report
from .errors import (
    HystwaveError,
    NonFiniteState,
    TimeOutOfRange,
    NoConvergence,
    InterfaceOutOfDomain,
    WindowTooCoarse,
    ExcludedPoint,
    DegenerateDenominator,
    NotCoupled,
    AtJump,
    InconsistentState,
    WindowEmpty,
    ConfigError,
)

__all__ = [
    "__version__",
    "ModelParams",
    "Phase",
    "EnergyReport",
    "hprime",
    "hpotential",
    "theta",
    "classify",
    "energy_report",
    "HystwaveError",
    "NonFiniteState",
    "TimeOutOfRange",
    "NoConvergence",
    "InterfaceOutOfDomain",
    "WindowTooCoarse",
    "ExcludedPoint",
    "DegenerateDenominator",
    "NotCoupled",
    "AtJump",
    "InconsistentState",
    "WindowEmpty",
    "ConfigError",
]
