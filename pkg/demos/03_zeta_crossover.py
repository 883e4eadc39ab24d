"""How small can the adiabatic coefficient get before KZ scaling degrades?

At zeta = 0 the schedule is an instantaneous quench; for large zeta it
reproduces the Kibble-Zurek density.  In between, the excess defect density
collapses onto a single curve in the scaled variable tau_Q^{-1/4} zeta:

    n/n_KZ - 1 = x (tau_Q^{-1/4} zeta)^{-y}

This script sweeps a (tau_Q, zeta) grid, fits the collapse, and checks the
piecewise defect model built from it.

Run:  python demos/03_zeta_crossover.py     (about half a minute)
"""

import numpy as np

from kzquench import (
    defect_density,
    defect_model,
    fit_zeta_collapse,
    kz_reference,
    make_oai,
    sudden_quench,
)

rows = []
print(f"{'tau_Q':>6} {'zeta':>7} {'scaled var':>11} {'n/n_KZ - 1':>11}")
for tau in (500.0, 1000.0, 2000.0):
    for zeta in np.geomspace(0.5, 3.0, 8):
        n = defect_density(make_oai(tau, float(zeta), 2.0, 0.0), N=2000).n
        rows.append((tau, float(zeta), n))
        print(f"{tau:6.0f} {zeta:7.3f} {zeta * tau**-0.25:11.3f} "
              f"{n / kz_reference(tau) - 1:11.4f}")

collapse = fit_zeta_collapse(rows)
print(f"\ncollapse fit: excess = {collapse.x:.4f} * (tau_Q^-1/4 zeta)^-{collapse.y:.4f}"
      f"   (r^2 = {collapse.fit.r_squared:.4f} on {collapse.fit.n_points} rows)")

# the fitted law stitches together the three regimes of the defect model
tau = 1000.0
print(f"\npiecewise model at tau_Q = {tau:g} (g_i = 2):")
print(f"  zeta = 0 (sudden):    {defect_model(0.0, tau, collapse, 2.0):.5f}"
      f"   [closed-form grid sum: {sudden_quench(2.0, 0.0, 2000).n:.5f}]")
for zeta in (1.0, 2.0, tau**0.25, 2 * tau**0.25):
    predicted = defect_model(float(zeta), tau, collapse, 2.0)
    simulated = defect_density(make_oai(tau, float(zeta), 2.0, 0.0), N=2000).n
    print(f"  zeta = {zeta:6.3f}:        model {predicted:.5f}  simulated {simulated:.5f}")
print(f"  (plain KZ reference:  {kz_reference(tau):.5f})")
