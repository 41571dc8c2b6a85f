"""Point spectrum of the linearization around a traveling wave.

Eigenvalues split into a family left of the continuous-spectrum line
Re(tau*lambda) = -1 and a family right of it; only the right family
decides stability.  As tau shrinks, the right-family eigenvalues climb
a rescaled ladder whose common real part tends to ln(2/delta): waves
are asymptotically unstable for delta < 2 and stable for delta > 2.
Every reported root is cross-checked against the quadrature residual
of the full eigenvalue problem, an oracle independent of the
characteristic functions used to find it.
"""

import math

from hystwave.model import ModelParams
from hystwave.spectral import (
    SpectralProblem,
    asymptotic_real_part,
    ep_residual,
    find_spectrum,
    instability_verdict,
)

for delta in (1.0, 3.0):
    print(f"--- delta={delta} ---")
    for tau in (1e-2, 1e-3):
        params = ModelParams(kappa=0.5, delta=delta, tau=tau)
        prob = SpectralProblem.from_wave(params, 1.0)
        pts = find_spectrum(prob)
        worst = max(ep_residual(prob, s) for s in pts)
        arp = asymptotic_real_part(prob)
        verdict = instability_verdict(params, 1.0)
        print(f"tau={tau:g}: {len(pts)} roots, max eigenpair residual {worst:.1e}, "
              f"verdict {verdict.kind}")
        print(f"  max Re(tau*lambda) = {verdict.max_re_tau_lambda:+.6f}; "
              f"rescaled real part {arp:+.4f} -> ln(2/delta) = "
              f"{math.log(2.0 / delta):+.4f}")
        for s in pts[:3]:
            print(f"    tau*lambda = {s.tau_lambda.real:+.6f} "
                  f"{s.tau_lambda.imag:+.6f}i  [{s.cls.value}]")
