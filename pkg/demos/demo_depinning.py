"""Depinning of a well-prepared ensemble under a unit-rate ramp.

Starting from the two-phase profile with a single jump at xi_ini, every
unit translates rigidly (x = x0 + t) while the jump unit stays inside
the outer branches, and the multiplier follows the closed form
tau + t + delta/2 - delta*xi_ini.  Once the jump unit reaches the
spinodal edge (t = 1 - kappa) that exactness ends and the interface
starts to move.  This script measures both facts directly.
"""

import numpy as np

from hystwave.drive import LinearDrive
from hystwave.model import ModelParams
from hystwave.particle import Scenario, WellPrepared, interfaces, run, well_prepared_state

params = ModelParams(kappa=0.5, delta=3.0, tau=0.2)
xi_ini = 0.5
scenario = Scenario(
    params=params,
    drive=LinearDrive(rate=1.0),
    initial=WellPrepared(xi_ini=xi_ini),
    t_end=3.0,
    dt=params.tau / 100.0,
    n=2000,
    snapshot_times=(0.25, 0.5, 1.0),
)
result = run(scenario)
diag = result.diagnostics

print(f"kappa={params.kappa}  delta={params.delta}  tau={params.tau}  N={scenario.n}")
print(f"pre-depinning window: t <= 1 - kappa = {1.0 - params.kappa}")

base = well_prepared_state(params, scenario.n, xi_ini)
for snap in result.snapshots:
    err = float(np.max(np.abs(snap.x - (base.x + snap.t))))
    tag = "rigid transport" if snap.t <= 1.0 - params.kappa else "post-depinning"
    print(f"  t={snap.t:4.2f}  max|x - (x0 + t)| = {err:.3e}  ({tag})")

early = diag["t"] <= 1.0 - params.kappa
sigma_exact = params.tau + diag["t"][early] + 0.5 * params.delta - params.delta * xi_ini
print(f"multiplier vs closed form (early window): "
      f"max err {np.max(np.abs(diag['sigma'][early] - sigma_exact)):.3e}")
print(f"constraint drift max|mean(x) - ell| over full run: "
      f"{np.max(np.abs(diag['mean_x'] - diag['ell'])):.3e}")

# after depinning the interface fans out to a finite width
late = result.snapshots[-1]
rep = interfaces(late, params)
print(f"interface at t={late.t}: [{rep.xi_minus:.4f}, {rep.xi_plus:.4f}] "
      f"width {rep.xi_plus - rep.xi_minus:.4f}")
