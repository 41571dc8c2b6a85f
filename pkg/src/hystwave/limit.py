"""Rate-independent limit of the constrained dynamics.

With instantaneous relaxation the system is described by two scalars:
the mean-field sigma and the interface position xi, linked to the drive
by the equation of state sigma + 1 - 2 xi = ell(t).  The local driving
at the interface g = sigma + delta (xi - 1/2) stays inside
[-(1-kappa), 1-kappa] while an interface exists; the interface moves
only when g is pinned at a threshold and the drive pushes outward:

* g = +(1-kappa) with rising ell: interface moves left,
  xi' = -ell'/(2+delta), sigma' = delta ell'/(2+delta)
* g = -(1-kappa) with falling ell: interface moves right, same rates

Otherwise xi is frozen and sigma' = ell'.  When xi reaches 0 or 1 the
interface disappears and sigma = ell -+ 1 until the boundary particle's
phase becomes invalid, at which point the interface re-enters.

Steps are integrated event-exactly: the drive is split at its
breakpoints, events (threshold hits, clamps, re-entries) are located by
root finding on ell, and states at events are assigned in closed form,
so the hysteresis relations hold to rounding accuracy and trajectories
are exactly rate independent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import AtJump, InconsistentState
from .model import ModelParams
from .drive import DrivePath

__all__ = [
    "Branch",
    "LimitState",
    "LimitResult",
    "limit_step",
    "limit_run",
    "quasi_stationary_profile",
    "loop_boundary",
    "from_particle",
]

_GTOL = 1e-12  # pinning detection; exact-set states sit within a few ulp
_EOS_TOL = 1e-9


class Branch(enum.Enum):
    Part1_StandingXi0 = "Part1_StandingXi0"
    Part2_RightMoving = "Part2_RightMoving"
    Part3_StandingXi1 = "Part3_StandingXi1"
    Part4_LeftMoving = "Part4_LeftMoving"
    Interior_Standing = "Interior_Standing"


@dataclass(frozen=True)
class LimitState:
    sigma: float
    xi: float
    t: float


@dataclass(frozen=True)
class LimitResult:
    """Dense trajectory of the limit model.

    Rows are exact per segment: vertices sit on events, interior rows on
    the analytic segment curves, so the (ell, sigma) polyline is the
    true hysteresis path up to rounding.
    """

    t: np.ndarray
    sigma: np.ndarray
    xi: np.ndarray
    ell: np.ndarray
    branch: Tuple[str, ...]
    events: Tuple[dict, ...]


def _g_of(params: ModelParams, sigma: float, xi: float) -> float:
    return sigma + params.delta * (xi - 0.5)


def _classify(params: ModelParams, sigma: float, xi: float, sgn: int) -> Branch:
    k = params.kappa
    thr = 1.0 - k
    g = _g_of(params, sigma, xi)
    if xi <= 0.0:
        if g <= -thr + _GTOL and sgn < 0:
            return Branch.Part2_RightMoving  # interface re-enters at p = 0
        return Branch.Part1_StandingXi0
    if xi >= 1.0:
        if g >= thr - _GTOL and sgn > 0:
            return Branch.Part4_LeftMoving  # interface re-enters at p = 1
        return Branch.Part3_StandingXi1
    if g >= thr - _GTOL and sgn > 0:
        return Branch.Part4_LeftMoving
    if g <= -thr + _GTOL and sgn < 0:
        return Branch.Part2_RightMoving
    return Branch.Interior_Standing


def _validate_entry(params: ModelParams, state: LimitState, ell0: float) -> None:
    eos = state.sigma + 1.0 - 2.0 * state.xi - ell0
    if abs(eos) > _EOS_TOL:
        raise InconsistentState(f"equation of state violated by {eos:.3e}")
    if state.xi < -1e-12 or state.xi > 1.0 + 1e-12:
        raise InconsistentState(f"interface position {state.xi} outside [0, 1]")
    if 0.0 < state.xi < 1.0:
        g = _g_of(params, state.sigma, state.xi)
        thr = 1.0 - params.kappa
        if g > thr + _EOS_TOL or g < -thr - _EOS_TOL:
            raise InconsistentState(
                f"interior interface with driving {g:.6g} outside [-{thr:.6g}, {thr:.6g}]"
            )


def _solve_ell(drive: DrivePath, lo: float, hi: float, target: float) -> float:
    f = lambda s: float(drive.ell(s)) - target
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    return float(brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16))


def _advance(
    params: ModelParams,
    drive: DrivePath,
    state: LimitState,
    t1: float,
    emit: Optional[Callable[[Branch, float, float, float, float, float], None]] = None,
) -> Tuple[LimitState, Branch]:
    """Advance to t1, emitting (branch, s0, s1, sigma0, xi0, ell0) segments."""
    t0 = state.t
    if t1 <= t0:
        raise ValueError("target time must exceed the state time")
    ell_start = float(drive.ell(t0))
    _validate_entry(params, state, ell_start)

    d = params.delta
    thr = 1.0 - params.kappa
    rate = 2.0 + d
    sigma, xi = state.sigma, state.xi

    bps = [t0]
    bps += [b for b in drive.breakpoints(t0, t1) if t0 < b < t1]
    bps.append(t1)
    last_branch = _classify(params, sigma, xi, 0)

    for s0, s1 in zip(bps, bps[1:]):
        cur = s0
        guard = 0
        while cur < s1:
            guard += 1
            if guard > 64:
                raise RuntimeError("event loop failed to terminate")
            mid_dot = float(drive.elldot(0.5 * (cur + s1)))
            sgn = 1 if mid_dot > 0.0 else (-1 if mid_dot < 0.0 else 0)
            ell_cur = float(drive.ell(cur))
            ell_end = float(drive.ell(s1))
            branch = _classify(params, sigma, xi, sgn)
            last_branch = branch

            event_ell: Optional[float] = None
            if branch is Branch.Interior_Standing and sgn != 0:
                g = _g_of(params, sigma, xi)
                tgt = ell_cur + ((thr if sgn > 0 else -thr) - g)
                if (sgn > 0 and ell_end >= tgt) or (sgn < 0 and ell_end <= tgt):
                    event_ell = tgt
            elif branch is Branch.Part4_LeftMoving:
                tgt = ell_cur + rate * xi
                if ell_end >= tgt:
                    event_ell = tgt
            elif branch is Branch.Part2_RightMoving:
                tgt = ell_cur - rate * (1.0 - xi)
                if ell_end <= tgt:
                    event_ell = tgt
            elif branch is Branch.Part1_StandingXi0 and sgn < 0:
                tgt = params.kappa + 0.5 * d
                if ell_end <= tgt < ell_cur:
                    event_ell = tgt
            elif branch is Branch.Part3_StandingXi1 and sgn > 0:
                tgt = -(params.kappa + 0.5 * d)
                if ell_end >= tgt > ell_cur:
                    event_ell = tgt

            s_stop = s1 if event_ell is None else _solve_ell(drive, cur, s1, event_ell)
            if emit is not None and s_stop > cur:
                emit(branch, cur, s_stop, sigma, xi, ell_cur)

            ell_stop = float(drive.ell(s_stop))
            dl = ell_stop - ell_cur
            if branch in (Branch.Part4_LeftMoving, Branch.Part2_RightMoving):
                xi = xi - dl / rate
                sigma = sigma + d * dl / rate
            else:
                sigma = sigma + dl

            if event_ell is not None:
                # exact assignment at the event keeps the relations to rounding
                if branch is Branch.Interior_Standing:
                    sigma = (thr if sgn > 0 else -thr) - d * (xi - 0.5)
                elif branch is Branch.Part4_LeftMoving:
                    xi = 0.0
                    sigma = ell_stop - 1.0
                elif branch is Branch.Part2_RightMoving:
                    xi = 1.0
                    sigma = ell_stop + 1.0
                elif branch is Branch.Part1_StandingXi0:
                    sigma = ell_stop - 1.0
                elif branch is Branch.Part3_StandingXi1:
                    sigma = ell_stop + 1.0
            cur = s_stop

    final = LimitState(sigma=sigma, xi=xi, t=t1)
    return final, last_branch


def limit_step(params: ModelParams, drive: DrivePath, state: LimitState, dt: float) -> Tuple[LimitState, Branch]:
    """Advance the limit state by dt, resolving all events inside the step.

    Returns the state at t + dt and the branch active as the step ends.
    Raises InconsistentState when the input violates the equation of
    state beyond 1e-9 or places an interior interface outside the
    admissible driving window.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    return _advance(params, drive, state, state.t + dt)


def limit_run(
    params: ModelParams,
    drive: DrivePath,
    state: LimitState,
    t_end: float,
    max_row_spacing: Optional[float] = None,
) -> LimitResult:
    """Dense trajectory from state.t to t_end with event-exact vertices.

    Rows are placed on every segment at most ``max_row_spacing`` apart
    (default: span/2048) and always at segment endpoints; each row is
    evaluated in closed form from the segment anchor, so standing and
    moving stretches are exact lines in the (ell, sigma) plane.
    """
    span = t_end - state.t
    if not span > 0.0:
        raise ValueError("t_end must exceed the state time")
    if max_row_spacing is None:
        max_row_spacing = span / 2048.0
    if not max_row_spacing > 0.0:
        raise ValueError("max_row_spacing must be positive")

    d = params.delta
    rate = 2.0 + d
    rows_t: List[float] = []
    rows_sigma: List[float] = []
    rows_xi: List[float] = []
    rows_ell: List[float] = []
    rows_branch: List[str] = []
    events: List[dict] = []
    prev_branch: Optional[Branch] = None

    def emit(branch: Branch, s0: float, s1: float, sigma0: float, xi0: float, ell0: float) -> None:
        nonlocal prev_branch
        if prev_branch is not None and branch is not prev_branch:
            events.append({"t": s0, "from": prev_branch.value, "to": branch.value})
        prev_branch = branch
        n = max(1, int(math.ceil((s1 - s0) / max_row_spacing)))
        ts = np.linspace(s0, s1, n + 1)
        moving = branch in (Branch.Part4_LeftMoving, Branch.Part2_RightMoving)
        for tr in ts:
            if rows_t and tr <= rows_t[-1]:
                continue
            ell_r = float(drive.ell(tr))
            dl = ell_r - ell0
            if moving:
                rows_sigma.append(sigma0 + d * dl / rate)
                rows_xi.append(xi0 - dl / rate)
            else:
                rows_sigma.append(sigma0 + dl)
                rows_xi.append(xi0)
            rows_t.append(float(tr))
            rows_ell.append(ell_r)
            rows_branch.append(branch.value)

    ell0 = float(drive.ell(state.t))
    rows_t.append(state.t)
    rows_sigma.append(state.sigma)
    rows_xi.append(state.xi)
    rows_ell.append(ell0)
    rows_branch.append(_classify(params, state.sigma, state.xi, 0).value)

    _advance(params, drive, state, t_end, emit=emit)
    return LimitResult(
        t=np.asarray(rows_t),
        sigma=np.asarray(rows_sigma),
        xi=np.asarray(rows_xi),
        ell=np.asarray(rows_ell),
        branch=tuple(rows_branch),
        events=tuple(events),
    )


def quasi_stationary_profile(state: LimitState, params: ModelParams, p):
    """Instantaneous particle profile of a limit state.

    x(p) = sigma + theta(p) - 1 left of the interface and + 1 right of
    it.  Raises AtJump when any requested p coincides with xi.
    """
    p_arr = np.asarray(p, dtype=float)
    if np.any(p_arr == state.xi):
        raise AtJump(f"profile is discontinuous at p = {state.xi}")
    x = state.sigma + params.delta * (p_arr - 0.5) + np.where(p_arr > state.xi, 1.0, -1.0)
    return x if x.ndim else float(x)


def loop_boundary(params: ModelParams) -> dict:
    """Hysteresis loop skeleton in the (ell, sigma) plane.

    Four affine relations (standing at either boundary, the two moving
    branches) and the corner points where they meet, all JSON friendly.
    """
    k, d = params.kappa, params.delta
    half = 0.5 * d
    return {
        "part1_standing_xi0": {"relation": "sigma = ell - 1", "a_sigma": 1.0, "a_ell": -1.0, "rhs": -1.0},
        "part2_right_moving": {
            "relation": "(1 + delta/2) sigma - (delta/2) ell = -(1 - kappa)",
            "a_sigma": 1.0 + half, "a_ell": -half, "rhs": -(1.0 - k),
        },
        "part3_standing_xi1": {"relation": "sigma = ell + 1", "a_sigma": 1.0, "a_ell": -1.0, "rhs": 1.0},
        "part4_left_moving": {
            "relation": "(1 + delta/2) sigma - (delta/2) ell = 1 - kappa",
            "a_sigma": 1.0 + half, "a_ell": -half, "rhs": 1.0 - k,
        },
        "corners": {
            "part4_part1": [2.0 - k + half, 1.0 - k + half],
            "part1_part2": [k + half, -1.0 + k + half],
            "part2_part3": [-2.0 + k - half, -1.0 + k - half],
            "part3_part4": [-k - half, 1.0 - k - half],
        },
    }


def from_particle(state, params: ModelParams, ell: float) -> LimitState:
    """Project a particle state onto the limit variables.

    xi is the midpoint of the interface bracket; sigma follows from the
    equation of state at the supplied drive value.
    """
    from .particle import interfaces

    rep = interfaces(state, params)
    xi = 0.5 * (rep.xi_minus + rep.xi_plus)
    sigma = ell - 1.0 + 2.0 * xi
    return LimitState(sigma=sigma, xi=xi, t=state.t)
