"""Build the three quench schedules and look at what makes them different.

The linear quench (LQ) moves the coupling at a constant rate, so driving the
Ising chain from g_i = 2 to g_f = 0 takes T = 2 tau_Q.  The optimized
adiabatic-impulse (OAI) schedule instead rides the threshold of adiabatic
breakdown away from the critical point: it sprints through the wings, crosses
g_c = 1 at the same linear rate -1/tau_Q, and finishes in T <= 2 sqrt(zeta
tau_Q).  The nonlinear variant (NLOAI) crosses the critical point as
|t/tau_Q|^r instead.

Run:  python demos/01_quench_schedules.py
"""

import warnings

import numpy as np

from kzquench import (
    AdiabaticityWarning,
    make_linear,
    make_nloai,
    make_oai,
    write_schedule_csv,
)

warnings.simplefilter("ignore", AdiabaticityWarning)

TAU_Q = 1000.0
ZETA = 32.0

lq = make_linear(TAU_Q, g_i=2.0, g_f=0.0)
oai = make_oai(TAU_Q, ZETA, g_i=2.0, g_f=0.0)
nloai = make_nloai(TAU_Q, ZETA, r=2.0, g_i=5.0, g_f=0.0)

print(f"tau_Q = {TAU_Q:g}, zeta = {ZETA:g}, g: 2 -> 0 (nloai: 5 -> 0)\n")
print(f"{'schedule':>10} {'t_i':>12} {'t_f':>12} {'duration':>12} {'bound 2*theta':>14}")
for name, p in (("linear", lq), ("oai", oai), ("nloai r=2", nloai)):
    bound = p.time_bound()
    bound_s = f"{bound:14.2f}" if np.isfinite(bound) else f"{'(none)':>14}"
    print(f"{name:>10} {p.t_i:12.2f} {p.t_f:12.2f} {p.total_time():12.2f} {bound_s}")

print(f"\nOAI finishes in {oai.total_time() / lq.total_time():.1%} of the linear-quench time.")

# every schedule crosses the critical point at t = 0 with the same local rate
print(f"\nepsilon(0):      lq={lq.epsilon(0.0):g}  oai={oai.epsilon(0.0):g}")
print(f"epsilon_dot(0):  lq={lq.epsilon_dot(0.0):.3e}  oai={oai.epsilon_dot(0.0):.3e}"
      f"  (both -1/tau_Q)  nloai r=2: {nloai.epsilon_dot(0.0):g}")

# the drive timescale |eps/eps_dot| vs the relaxation time |eps|^-1: the OAI
# schedule keeps their ratio pinned near zeta away from criticality
ts = np.linspace(0.98 * oai.t_i, -1.0, 9)
drive, relax = oai.timescales(ts)
print("\n   t        drive |eps/eps_dot|   relax |eps|^-1   ratio (-> zeta near t_i)")
for t, d, r in zip(ts, drive, relax):
    print(f"{t:9.2f} {d:18.2f} {r:16.2f} {d / r:9.2f}")

for p, name in ((lq, "schedule_linear.csv"), (oai, "schedule_oai.csv"),
                (nloai, "schedule_nloai.csv")):
    write_schedule_csv(p, name, samples=2000)
    print(f"wrote {name}")
