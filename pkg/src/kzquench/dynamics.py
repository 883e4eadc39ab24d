"""Nonequilibrium mode dynamics over a quench schedule.

Each momentum mode of the reduced Ising chain is an independent two-level
problem.  The pure-state amplitudes follow the time-dependent Bogoliubov-de
Gennes equations

    i d/dt (u_q, v_q) = [[eps_q(t), delta_q], [delta_q, -eps_q(t)]] (u_q, v_q),

with eps_q(t) = 2(g(t) - cos q), delta_q = 2 sin q.  Under Gaussian white
noise on the transverse field (strength W) the noise-averaged mode density
matrix obeys the dephasing master equation

    d rho_q/dt = -i [eps_q(t) sigma_z + delta_q sigma_x, rho_q]
                 - (W^2/2) [sigma_z, [sigma_z, rho_q]],

which is propagated in Bloch form (exactly Hermitian, unit trace, with
positivity equivalent to |r| <= 1).  The integrator is a fixed-step
classical 4th-order Runge-Kutta with step ``dt = eta / max(omega_max, W^2,
1)``; fixed stepping keeps runs bitwise reproducible and makes step-halving
a built-in error estimate.

Defect (kink) densities are the momentum average of the final excitation
probabilities, n = (2/N) sum_{q>0} p_q, accumulated in ascending-q order.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import (
    STATUS_NORM,
    STATUS_POSITIVITY,
    bdg_integrate,
    lindblad_integrate,
)
from .ising import (
    ModeState,
    excited_state_arrays,
    ground_state_arrays,
    mode_grid,
)
from .protocols import QuenchProtocol

__all__ = [
    "StepPolicy",
    "FrozenDrive",
    "IntegrationError",
    "ModeDensity",
    "QuenchResult",
    "evolve_pure",
    "evolve_lindblad",
    "excitation_probability",
    "defect_density",
    "sudden_quench",
    "MODES_COLUMNS",
    "RUNS_COLUMNS",
    "runs_row",
    "write_modes_csv",
]


class IntegrationError(RuntimeError):
    """An integration invariant was violated (norm drift, positivity loss)."""


@dataclass(frozen=True)
class StepPolicy:
    """Fixed-step integration policy.

    ``eta`` sets the step through dt = eta / max(omega_max, W^2, 1) where
    omega_max is the largest instantaneous single-mode frequency 2(1 + g)
    over the schedule.  Invariants are checked every ``check_interval``
    steps (and at the final step); drift beyond the abort thresholds raises
    :class:`IntegrationError`.
    """

    eta: float = 0.02
    check_interval: int = 100
    norm_abort: float = 1e-6
    positivity_abort: float = 1e-8

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.check_interval < 1:
            raise ValueError(f"check_interval must be >= 1, got {self.check_interval}")

    def dt_for(self, omega_max: float, W: float = 0.0) -> float:
        return self.eta / max(omega_max, W * W, 1.0)


@dataclass(frozen=True)
class FrozenDrive:
    """Constant-coupling drive over a fixed window (smoke-test mode)."""

    g: float
    t_i: float
    t_f: float

    def g_of_t(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, self.g)
        return float(self.g) if t.ndim == 0 else out


def _omega_max(drive) -> float:
    # schedules are monotone non-increasing, so the largest coupling is at t_i
    g0 = float(np.max(drive.g_of_t(drive.t_i)))
    return 2.0 * (1.0 + g0)


def _time_grid(drive, policy: StepPolicy, W: float, t_span=None):
    t0, t1 = (drive.t_i, drive.t_f) if t_span is None else t_span
    dt = policy.dt_for(_omega_max(drive), W)
    steps = max(1, math.ceil(abs(t1 - t0) / dt))
    times = np.linspace(t0, t1, steps + 1)
    mids = 0.5 * (times[:-1] + times[1:])
    g_nodes = np.asarray(drive.g_of_t(times), dtype=float)
    g_mids = np.asarray(drive.g_of_t(mids), dtype=float)
    return times, g_nodes, g_mids


def _evolve_pure_batch(drive, q, policy, y0=None, t_span=None):
    """Integrate all modes in ``q`` simultaneously; returns (u, v, stats)."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    times, g_nodes, g_mids = _time_grid(drive, policy, 0.0, t_span)
    if y0 is None:
        g_start = float(g_nodes[0])
        u0, v0 = ground_state_arrays(g_start, q)
        u = u0.astype(np.complex128)
        v = v0.astype(np.complex128)
    else:
        u = np.array(y0[0], dtype=np.complex128, copy=True)
        v = np.array(y0[1], dtype=np.complex128, copy=True)
    c2 = np.ascontiguousarray(2.0 * np.cos(q))
    s2 = np.ascontiguousarray(2.0 * np.sin(q))
    status, worst, drift, done = bdg_integrate(
        u, v, c2, s2, times, g_nodes, g_mids, policy.check_interval, policy.norm_abort
    )
    if status == STATUS_NORM:
        raise IntegrationError(
            f"norm drift {drift:.3e} at q={q[worst]:.6f} after {done} steps "
            f"(dt={abs(times[1] - times[0]):.3e}); reduce eta"
        )
    stats = {"steps": times.size - 1, "dt": float(abs(times[1] - times[0]))}
    return u, v, stats


def _evolve_lindblad_batch(drive, q, W, policy, noise_rate_scale=1.0, r0=None, t_span=None):
    """Integrate the mode density matrices in Bloch form; returns (rx, ry, rz, stats)."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    times, g_nodes, g_mids = _time_grid(drive, policy, W, t_span)
    if r0 is None:
        g_start = float(g_nodes[0])
        u0, v0 = ground_state_arrays(g_start, q)
        # pure-state Bloch vector of (u, v): real amplitudes, so r_y = 0
        rx = np.ascontiguousarray(2.0 * u0 * v0)
        ry = np.zeros_like(rx)
        rz = np.ascontiguousarray(u0 * u0 - v0 * v0)
    else:
        rx = np.array(r0[0], dtype=float, copy=True)
        ry = np.array(r0[1], dtype=float, copy=True)
        rz = np.array(r0[2], dtype=float, copy=True)
    c2 = np.ascontiguousarray(2.0 * np.cos(q))
    hx = np.ascontiguousarray(2.0 * np.sin(q))
    gamma = 2.0 * W * W * noise_rate_scale
    status, worst, defect, done = lindblad_integrate(
        rx, ry, rz, c2, hx, gamma, times, g_nodes, g_mids,
        policy.check_interval, policy.positivity_abort,
    )
    if status == STATUS_POSITIVITY:
        raise IntegrationError(
            f"positivity violated by {-defect:.3e} at q={q[worst]:.6f} after {done} "
            f"steps (dt={abs(times[1] - times[0]):.3e}); reduce eta"
        )
    stats = {"steps": times.size - 1, "dt": float(abs(times[1] - times[0]))}
    return rx, ry, rz, stats


@dataclass(frozen=True)
class ModeDensity:
    """2x2 mode density matrix (Hermitian, unit trace, positive)."""

    rho: np.ndarray

    @classmethod
    def from_bloch(cls, rx: float, ry: float, rz: float) -> "ModeDensity":
        rho = 0.5 * np.array(
            [[1.0 + rz, rx - 1j * ry], [rx + 1j * ry, 1.0 - rz]], dtype=complex
        )
        return cls(rho=rho)

    def bloch(self) -> tuple[float, float, float]:
        r = self.rho
        return (
            float(2.0 * r[0, 1].real),
            float(-2.0 * r[0, 1].imag),
            float((r[0, 0] - r[1, 1]).real),
        )

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def trace(self) -> float:
        return float(self.rho.trace().real)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.rho)[0])


def evolve_pure(drive, q: float, policy: StepPolicy = StepPolicy()) -> ModeState:
    """Integrate one mode from the instantaneous ground state at t_i to t_f.

    ``drive`` is a :class:`~kzquench.protocols.QuenchProtocol` (or any object
    with ``t_i``, ``t_f`` and a vectorized ``g_of_t``, e.g. a
    :class:`FrozenDrive`).
    """
    u, v, _ = _evolve_pure_batch(drive, q, policy)
    return ModeState(complex(u[0]), complex(v[0]))


def evolve_lindblad(
    drive,
    q: float,
    W: float,
    policy: StepPolicy = StepPolicy(),
    noise_rate_scale: float = 1.0,
) -> ModeDensity:
    """Integrate one mode density matrix under dephasing of strength W.

    ``noise_rate_scale`` multiplies the dephasing rate W^2/2 as printed, kept
    as an escape hatch for alternative operator normalizations; exponent fits
    are insensitive to it.
    """
    if W < 0:
        raise ValueError(f"noise strength must be non-negative, got W={W}")
    rx, ry, rz, _ = _evolve_lindblad_batch(drive, q, W, policy, noise_rate_scale)
    return ModeDensity.from_bloch(float(rx[0]), float(ry[0]), float(rz[0]))


def excitation_probability(final, q: float, g_f: float) -> float:
    """Overlap of the final state with the excited mode eigenstate at g_f.

    Pure states give |<ex|psi>|^2, densities give <ex|rho|ex>.
    """
    a, b = excited_state_arrays(g_f, np.array([q]))
    a, b = float(a[0]), float(b[0])
    if isinstance(final, ModeState):
        amp = a * final.u + b * final.v
        return float(abs(amp) ** 2)
    if isinstance(final, ModeDensity):
        ex = np.array([a, b], dtype=complex)
        return float((ex.conj() @ final.rho @ ex).real)
    raise TypeError(f"expected ModeState or ModeDensity, got {type(final).__name__}")


def _excitation_probability_pure_batch(u, v, q, g_f):
    a, b = excited_state_arrays(g_f, q)
    return np.abs(a * u + b * v) ** 2


def _excitation_probability_bloch_batch(rx, ry, rz, q, g_f):
    a, b = excited_state_arrays(g_f, q)
    # <ex|rho|ex> for a real eigenvector (a, b)
    return 0.5 * (1.0 + 2.0 * a * b * rx + (a * a - b * b) * rz)


@dataclass(frozen=True)
class QuenchResult:
    """Per-mode excitation probabilities and the aggregated defect density."""

    protocol: dict
    N: int
    W: float
    eta: float
    q: np.ndarray
    p: np.ndarray
    n: float
    total_time: float
    steps: int
    dt: float
    routed_sudden: bool = False

    def mode_pairs(self):
        return list(zip(self.q.tolist(), self.p.tolist()))


def _aggregate(q: np.ndarray, p: np.ndarray, N: int) -> float:
    # fixed ascending-q summation order for reproducibility
    order = np.argsort(q)
    return float((2.0 / N) * np.sum(p[order]))


def _protocol_descriptor(p: QuenchProtocol) -> dict:
    return {
        "kind": p.kind,
        "tau_Q": p.tau_Q,
        "zeta": p.zeta,
        "r": p.r,
        "g_i": p.g_i,
        "g_f": p.g_f,
    }


def _check_probabilities(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    bad = np.maximum(p - 1.0, -p)
    worst = int(np.argmax(bad))
    if bad[worst] > 1e-8:
        raise IntegrationError(
            f"excitation probability {p[worst]!r} outside [0, 1] at q={q[worst]:.6f}"
        )
    return p


def sudden_quench(g_i: float, g_f: float, N: int = 2000) -> QuenchResult:
    """Closed-form instantaneous quench g_i -> g_f (no time integration).

    p_q is the squared overlap of the initial ground state with the final
    excited state; this is the zeta * tau_Q -> 0 limit of the
    adiabatic-impulse schedules.
    """
    if g_i < g_f:
        raise ValueError(f"sudden quench requires g_i >= g_f, got {g_i} < {g_f}")
    grid = mode_grid(N)
    u0, v0 = ground_state_arrays(g_i, grid.q)
    p = _excitation_probability_pure_batch(u0, v0, grid.q, g_f)
    n = _aggregate(grid.q, p, N)
    return QuenchResult(
        protocol={"kind": "sudden", "tau_Q": 0.0, "zeta": 0.0, "r": 1.0, "g_i": g_i, "g_f": g_f},
        N=N, W=0.0, eta=0.0, q=grid.q, p=p, n=n,
        total_time=0.0, steps=0, dt=0.0,
    )


def defect_density(
    protocol: QuenchProtocol,
    N: int = 2000,
    W: float = 0.0,
    policy: StepPolicy = StepPolicy(),
    noise_rate_scale: float = 1.0,
) -> QuenchResult:
    """Integrate every mode of an N-site chain and aggregate the kink density.

    Pure Bogoliubov-de Gennes dynamics for W = 0, dephasing Lindblad dynamics
    for W > 0.  Vanishing adiabatic-impulse windows (2 theta < 10 dt) are
    routed to the closed-form sudden quench, where integration would be
    ill-conditioned.
    """
    if N % 2 != 0 or N < 4:
        raise ValueError(f"N must be even and >= 4, got {N}")
    if W < 0:
        raise ValueError(f"noise strength must be non-negative, got W={W}")
    dt = policy.dt_for(_omega_max(protocol), W)
    if protocol.theta is not None and 2.0 * protocol.theta < 10.0 * dt:
        base = sudden_quench(protocol.g_i, protocol.g_f, N)
        return QuenchResult(
            protocol=_protocol_descriptor(protocol),
            N=N, W=W, eta=policy.eta, q=base.q, p=base.p, n=base.n,
            total_time=protocol.total_time(), steps=0, dt=0.0, routed_sudden=True,
        )
    grid = mode_grid(N)
    if W == 0.0:
        u, v, stats = _evolve_pure_batch(protocol, grid.q, policy)
        p = _excitation_probability_pure_batch(u, v, grid.q, protocol.g_f)
    else:
        rx, ry, rz, stats = _evolve_lindblad_batch(
            protocol, grid.q, W, policy, noise_rate_scale
        )
        p = _excitation_probability_bloch_batch(rx, ry, rz, grid.q, protocol.g_f)
    p = _check_probabilities(p, grid.q)
    n = _aggregate(grid.q, p, N)
    return QuenchResult(
        protocol=_protocol_descriptor(protocol),
        N=N, W=W, eta=policy.eta, q=grid.q, p=p, n=n,
        total_time=protocol.total_time(), steps=stats["steps"], dt=stats["dt"],
    )


# -- CSV serialization ---------------------------------------------------------

MODES_COLUMNS = ("q", "p_q")
RUNS_COLUMNS = (
    "protocol", "tau_Q", "zeta", "alpha", "r", "W", "N",
    "g_i", "g_f", "T_total", "n", "dt_eta",
)


def write_modes_csv(result: QuenchResult, path) -> None:
    """Per-mode excitation probabilities as CSV (round-trip formatting)."""
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MODES_COLUMNS)
        for qv, pv in zip(result.q, result.p):
            writer.writerow([repr(float(qv)), repr(float(pv))])


def runs_row(result: QuenchResult, alpha: float | None = None) -> list[str]:
    """One summary row for runs.csv; ``alpha`` is blank for fixed-zeta runs."""
    meta = result.protocol
    zeta = meta.get("zeta")
    return [
        str(meta["kind"]),
        repr(float(meta["tau_Q"])),
        "" if zeta is None else repr(float(zeta)),
        "" if alpha is None else repr(float(alpha)),
        repr(float(meta["r"])),
        repr(float(result.W)),
        str(result.N),
        repr(float(meta["g_i"])),
        repr(float(meta["g_f"])),
        repr(float(result.total_time)),
        repr(float(result.n)),
        repr(float(result.eta)),
    ]
