"""Time integration of the constrained mean-field ensemble.

State values live on the fixed midpoint grid p_k = (k - 1/2)/N.  The
multiplier that enforces mean(x) = ell(t) uses the midpoint rule, the
same quadrature as every other integral in the package, which makes the
constraint identity exact in the discrete dynamics.

Two integrators are provided.  The default exponential integrator treats
each unit's affine branch ODE exactly over a step with the multiplier
frozen at the value that lands the discrete mean exactly on ell(t+dt);
drift of |mean(x) - ell| is then pure floating-point noise.  The explicit
Euler mode freezes the instantaneous multiplier instead and satisfies
mean(x+) = mean(x) + dt * elldot(t) identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .drive import DrivePath, LinearDrive
from .errors import NonFiniteState, TimeOutOfRange
from .model import ModelParams, energy_report, hprime, phase_masks, theta

__all__ = [
    "ParticleState",
    "WellPrepared",
    "ExplicitInitial",
    "RandomMonotone",
    "Scenario",
    "InterfaceReport",
    "RunResult",
    "midpoint_grid",
    "well_prepared_state",
    "random_monotone_state",
    "sigma_of_state",
    "step",
    "run",
    "interfaces",
    "explicit_pre_depinning",
    "run_linearized",
    "LinearizedResult",
]

DIAG_COLUMNS = ("t", "sigma", "xi_minus", "xi_plus", "energy", "dissipation", "mean_x", "ell")


def midpoint_grid(n: int) -> np.ndarray:
    """Midpoint labels p_k = (k - 1/2)/n for k = 1..n."""
    return (np.arange(1, n + 1) - 0.5) / n


@dataclass(frozen=True)
class ParticleState:
    """Ensemble state x(t, p_k) on the midpoint grid at time t."""

    pgrid: np.ndarray
    x: np.ndarray
    t: float

    def __post_init__(self):
        if self.pgrid.shape != self.x.shape:
            raise ValueError("pgrid and x must have equal shapes")

    @property
    def mean(self) -> float:
        return float(np.mean(self.x))


def well_prepared_state(params: ModelParams, n: int, xi_ini: float) -> ParticleState:
    """Two-branch equilibrium data with a single jump at xi_ini.

    x(p) = delta (p - xi_ini) + sign(p - xi_ini); the discrete mean is
    delta (1/2 - xi_ini) plus the grid's sign imbalance, both exact under
    the midpoint rule.
    """
    if not (0.0 < xi_ini < 1.0):
        raise ValueError("xi_ini must lie strictly inside (0, 1)")
    p = midpoint_grid(n)
    x = params.delta * (p - xi_ini) + np.where(p >= xi_ini, 1.0, -1.0)
    return ParticleState(pgrid=p, x=x, t=0.0)


def random_monotone_state(n: int, seed: int, mean: float, spread: float = 1.5) -> ParticleState:
    """Sorted uniform samples on (-spread, spread), shifted to the given mean."""
    rng = np.random.default_rng(seed)
    x = np.sort(rng.uniform(-spread, spread, size=n))
    x = x + (mean - x.mean())
    return ParticleState(pgrid=midpoint_grid(n), x=x, t=0.0)


@dataclass(frozen=True)
class WellPrepared:
    xi_ini: float


@dataclass(frozen=True)
class ExplicitInitial:
    x: np.ndarray


@dataclass(frozen=True)
class RandomMonotone:
    seed: int
    spread: float = 1.5


InitialData = Union[WellPrepared, ExplicitInitial, RandomMonotone]


def _dt_bound(params: ModelParams, method: str) -> float:
    # explicit mode must resolve the fast spinodal rate (1-kappa)/(kappa tau)
    if method == "explicit":
        return min(params.tau, params.kappa * params.tau / (1.0 - params.kappa)) / 10.0
    return params.tau / 10.0


@dataclass(frozen=True)
class Scenario:
    """Complete description of one simulation run."""

    params: ModelParams
    drive: DrivePath
    initial: InitialData
    t_end: float
    dt: float
    n: int = 2000
    method: str = "exponential"
    stride: int = 1
    snapshot_times: tuple = ()

    def __post_init__(self):
        if self.method not in ("exponential", "explicit"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.t_end <= 0.0:
            raise ValueError("t_end must be positive")
        if self.n < 2:
            raise ValueError("need at least two units")
        if self.stride < 1:
            raise ValueError("stride must be at least 1")
        bound = _dt_bound(self.params, self.method)
        if not (0.0 < self.dt <= bound * (1.0 + 1e-12)):
            raise ValueError(
                f"dt={self.dt} outside stability bound {bound:.6g} for method {self.method!r}"
            )
        if isinstance(self.initial, WellPrepared) and not (0.0 < self.initial.xi_ini < 1.0):
            raise ValueError("well-prepared data needs 0 < xi_ini < 1")

    def initial_state(self) -> ParticleState:
        if isinstance(self.initial, WellPrepared):
            return well_prepared_state(self.params, self.n, self.initial.xi_ini)
        if isinstance(self.initial, RandomMonotone):
            return random_monotone_state(
                self.n, self.initial.seed, mean=self.drive.ell(0.0), spread=self.initial.spread
            )
        x = np.asarray(self.initial.x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"explicit initial data must have shape ({self.n},)")
        return ParticleState(pgrid=midpoint_grid(self.n), x=x.copy(), t=0.0)


def sigma_of_state(state: ParticleState, params: ModelParams, elldot: float) -> float:
    """Instantaneous multiplier tau * elldot + mean(H'(x))."""
    return params.tau * elldot + float(np.mean(hprime(state.x, params)))


def _branch_affine(x, p, params: ModelParams, dt: float):
    """Per-branch exponential step split as x+ = base + coef * sigma.

    Outer branches relax at rate 1/tau toward theta + sigma -/+ 1; the
    spinodal branch grows at rate (1-kappa)/(kappa tau).  All coef
    entries are strictly positive.
    """
    k, tau = params.kappa, params.tau
    th = theta(p, params)
    minus, spin, plus = phase_masks(x, params)
    eo = math.exp(-dt / tau)
    es = math.exp((1.0 - k) * dt / (k * tau))
    base = np.empty_like(x)
    coef = np.empty_like(x)
    base[minus] = (th[minus] - 1.0) * (1.0 - eo) + x[minus] * eo
    base[plus] = (th[plus] + 1.0) * (1.0 - eo) + x[plus] * eo
    coef[minus] = 1.0 - eo
    coef[plus] = 1.0 - eo
    ks = k / (1.0 - k)
    base[spin] = -ks * th[spin] * (1.0 - es) + x[spin] * es
    coef[spin] = ks * (es - 1.0)
    return base, coef


def step(
    state: ParticleState,
    params: ModelParams,
    drive: DrivePath,
    dt: float,
    method: str = "exponential",
) -> ParticleState:
    """Advance the ensemble one step; branch membership is frozen at entry.

    A unit crossing +/-kappa mid-step finishes the step on its entry
    branch and is re-classified at the next step.
    """
    t = state.t
    if method == "explicit":
        sig = sigma_of_state(state, params, drive.elldot(t))
        rhs = sig + theta(state.pgrid, params) - hprime(state.x, params)
        x_new = state.x + (dt / params.tau) * rhs
    else:
        base, coef = _branch_affine(state.x, state.pgrid, params, dt)
        sig = (drive.ell(t + dt) - float(np.mean(base))) / float(np.mean(coef))
        x_new = base + coef * sig
    if not np.all(np.isfinite(x_new)):
        raise NonFiniteState(t + dt)
    return ParticleState(pgrid=state.pgrid, x=x_new, t=t + dt)


class InterfaceReport(NamedTuple):
    """Interface positions with a multiple-interface flag.

    ``multiple`` is set when the phase pattern is not of the single
    interface form (a block of Minus, then Spinodal, then Plus, any of
    them possibly empty); positions then refer to first crossings.
    """

    xi_minus: float
    xi_plus: float
    multiple: bool


def _first_up_crossing(p: np.ndarray, x: np.ndarray, level: float) -> float:
    above = x >= level
    if not above.any():
        return 1.0
    i = int(np.argmax(above))
    if i == 0:
        return float(p[0]) if x[0] == level else 0.0
    x0, x1 = x[i - 1], x[i]
    if x1 == x0:
        return float(p[i])
    w = (level - x0) / (x1 - x0)
    return float(p[i - 1] + w * (p[i] - p[i - 1]))


def interfaces(state: ParticleState, params: ModelParams) -> InterfaceReport:
    """Locate the spinodal interval endpoints by linear interpolation.

    Returns (1, 1) if every unit is in the Minus phase, (0, 0) if every
    unit is in the Plus phase, and the shared jump location twice when
    both outer phases are present but no unit is spinodal.
    """
    minus, spin, plus = phase_masks(state.x, params)
    if minus.all():
        return InterfaceReport(1.0, 1.0, False)
    if plus.all():
        return InterfaceReport(0.0, 0.0, False)
    codes = np.where(minus, 0, np.where(spin, 1, 2))
    multiple = bool(np.any(np.diff(codes) < 0))
    if not spin.any():
        shared = _first_up_crossing(state.pgrid, state.x, 0.0)
        return InterfaceReport(shared, shared, multiple)
    xm = _first_up_crossing(state.pgrid, state.x, -params.kappa)
    xp = _first_up_crossing(state.pgrid, state.x, params.kappa)
    return InterfaceReport(xm, xp, multiple)


@dataclass
class RunResult:
    """Diagnostics series, snapshots, and bookkeeping from one run."""

    scenario: Scenario
    diagnostics: dict
    snapshots: list
    multiple_interface_times: list
    min_consecutive_dx: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.diagnostics[name]


def _diag_row(state: ParticleState, params: ModelParams, drive: DrivePath):
    eld = drive.elldot(state.t)
    sig = sigma_of_state(state, params, eld)
    rep = energy_report(state, params, sig, eld)
    iface = interfaces(state, params)
    return (
        state.t,
        sig,
        iface.xi_minus,
        iface.xi_plus,
        rep.energy,
        rep.dissipation,
        state.mean,
        drive.ell(state.t),
    ), iface.multiple


def run(scenario: Scenario) -> RunResult:
    """Integrate the scenario to t_end with diagnostics every ``stride`` steps.

    Snapshots are taken at the first step boundary at or after each
    requested time.  Raises NonFiniteState with the failing time if the
    state blows up.
    """
    params, drive = scenario.params, scenario.drive
    state = scenario.initial_state()
    n_full = int(math.floor(scenario.t_end / scenario.dt + 1e-12))
    remainder = scenario.t_end - n_full * scenario.dt
    if remainder < 1e-12 * max(1.0, scenario.t_end):
        remainder = 0.0

    rows = []
    flags = []
    min_dx = []
    snapshots = []
    snap_queue = sorted(scenario.snapshot_times)

    def emit(st: ParticleState):
        row, multi = _diag_row(st, params, drive)
        rows.append(row)
        flags.append(multi)
        min_dx.append(float(np.min(np.diff(st.x))) if st.x.size > 1 else math.inf)

    def maybe_snapshot(st: ParticleState):
        nonlocal snap_queue
        while snap_queue and st.t >= snap_queue[0] - 1e-12:
            snapshots.append(st)
            snap_queue = snap_queue[1:]

    emit(state)
    maybe_snapshot(state)
    total_steps = n_full + (1 if remainder else 0)
    for i in range(1, total_steps + 1):
        dt_i = scenario.dt if i <= n_full else remainder
        state = step(state, params, drive, dt_i, scenario.method)
        # re-anchor the clock to the exact grid to avoid accumulation drift
        t_exact = i * scenario.dt if i <= n_full else scenario.t_end
        state = ParticleState(pgrid=state.pgrid, x=state.x, t=t_exact)
        if i % scenario.stride == 0 or i == total_steps:
            emit(state)
        maybe_snapshot(state)

    diag = {name: np.array([r[j] for r in rows]) for j, name in enumerate(DIAG_COLUMNS)}
    multi_times = [rows[i][0] for i, f in enumerate(flags) if f]
    return RunResult(
        scenario=scenario,
        diagnostics=diag,
        snapshots=snapshots,
        multiple_interface_times=multi_times,
        min_consecutive_dx=np.array(min_dx),
    )


def explicit_pre_depinning(scenario: Scenario, t: float):
    """Closed-form reference solution of the unit-rate well-prepared run.

    Valid while the unit at the jump has not yet reached the spinodal
    edge, 0 <= t <= 1 - kappa: every unit translates rigidly, x = x0 + t,
    and the multiplier is tau + t + delta/2 - delta * xi_ini.

    Returns
    -------
    (ParticleState, float)
        The reference state at time t and the reference multiplier.
    """
    if not isinstance(scenario.initial, WellPrepared):
        raise ValueError("reference solution requires well-prepared initial data")
    if not (isinstance(scenario.drive, LinearDrive) and scenario.drive.rate == 1.0):
        raise ValueError("reference solution requires a unit-rate linear drive")
    params = scenario.params
    if not (0.0 <= t <= 1.0 - params.kappa):
        raise TimeOutOfRange(f"t={t} outside [0, {1.0 - params.kappa}]")
    base = well_prepared_state(params, scenario.n, scenario.initial.xi_ini)
    sigma = params.tau + t + 0.5 * params.delta - params.delta * scenario.initial.xi_ini
    return ParticleState(pgrid=base.pgrid, x=base.x + t, t=t), sigma


@dataclass
class LinearizedResult:
    """Mass history and final perturbation of a linearized run."""

    t: np.ndarray
    mass: np.ndarray
    z: np.ndarray
    pgrid: np.ndarray


def run_linearized(
    params: ModelParams,
    omega: float,
    xi_lo: float,
    xi_hi: float,
    z0: np.ndarray,
    t_end: float,
    dt: float,
    n: Optional[int] = None,
) -> LinearizedResult:
    """Integrate the linearization around a traveling interface.

    The perturbation z relaxes at rate 1/tau outside the comoving stripe
    (xi_lo + omega t, xi_hi + omega t), grows at rate (1-kappa)/(kappa tau)
    inside it, and is coupled through the stripe integral of z.  The
    stripe source is frozen per step at the value that makes the discrete
    mass satisfy m(t+dt) = m(t) exp(-dt/tau) exactly, which is the exact
    invariant of the continuous equation.
    """
    z = np.asarray(z0, dtype=float).copy()
    if n is None:
        n = z.size
    if z.shape != (n,):
        raise ValueError("z0 shape mismatch")
    if dt > params.tau / 10.0 * (1.0 + 1e-12):
        raise ValueError("dt exceeds tau/10")
    p = midpoint_grid(n)
    k, tau = params.kappa, params.tau
    eo = math.exp(-dt / tau)
    es = math.exp((1.0 - k) * dt / (k * tau))
    ks = k / (1.0 - k)

    steps = int(round(t_end / dt))
    ts = np.empty(steps + 1)
    mass = np.empty(steps + 1)
    ts[0] = 0.0
    mass[0] = float(np.mean(z))
    for i in range(1, steps + 1):
        t = (i - 1) * dt
        stripe = (p > xi_lo + omega * t) & (p < xi_hi + omega * t)
        base = np.where(stripe, z * es, z * eo)
        coef = np.where(stripe, -ks * (es - 1.0), -(1.0 - eo))
        m = float(np.mean(z))
        source = (m * eo - float(np.mean(base))) / float(np.mean(coef))
        z = base + coef * source
        if not np.all(np.isfinite(z)):
            raise NonFiniteState(i * dt)
        ts[i] = i * dt
        mass[i] = float(np.mean(z))
    return LinearizedResult(t=ts, mass=mass, z=z, pgrid=p)
