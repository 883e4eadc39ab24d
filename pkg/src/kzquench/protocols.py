"""Closed-form quench schedules for ramping a coupling across a quantum critical point.

A schedule is described by the dimensionless distance from criticality,
``epsilon(t) = (g(t) - g_c)/g_c``, which decreases monotonically from
``epsilon_i > 0`` to ``epsilon_f < 0`` over a finite window ``[t_i, t_f]``
with a linear crossing ``epsilon ~ -t/tau_Q`` at the critical point.

Four schedule families are provided:

* ``linear``  -- the plain linear quench, ``epsilon = -t/tau_Q``.
* ``nlq``     -- nonlinear quench, ``epsilon = -sgn(t)|t/tau_Q|^r``.
* ``oai``     -- optimized adiabatic-impulse schedule: away from the critical
  point the drive rides the threshold of adiabatic breakdown,
  ``|eps/eps_dot| ~ zeta |eps|^{-z nu}``, which confines the whole evolution
  to ``|t| < theta`` with ``theta = (1/z nu)(zeta^{1/z nu} tau_Q)^{z nu/(1+z nu)}``.
* ``nloai``   -- the nonlinear generalization of ``oai``; near t=0 it reduces
  to the nonlinear quench ``epsilon = -sgn(t)|t/tau_Q|^r``.

All evaluations are closed-form in double precision; window endpoints are
computed analytically, never by root finding.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CriticalData",
    "AlphaPolicy",
    "QuenchProtocol",
    "ScheduleError",
    "WindowError",
    "AdiabaticityWarning",
    "ISING_CHAIN",
    "make_linear",
    "make_nlq",
    "make_oai",
    "make_nloai",
    "write_schedule_csv",
]


class ScheduleError(ValueError):
    """Invalid schedule parameters."""


class WindowError(ValueError):
    """Time outside the schedule window [t_i, t_f]."""


class AdiabaticityWarning(UserWarning):
    """The small-offset condition (zeta/tau_Q)^{1/(1+z nu)} << 1 is marginal."""


@dataclass(frozen=True)
class CriticalData:
    """Critical exponents and location of the transition.

    For the transverse Ising chain z = nu = d = 1 and g_c = 1.
    """

    z: float = 1.0
    nu: float = 1.0
    d: int = 1
    g_c: float = 1.0

    def __post_init__(self):
        if not (self.z > 0 and self.nu > 0):
            raise ScheduleError(f"exponents must be positive, got z={self.z}, nu={self.nu}")
        if int(self.d) != self.d or self.d < 1:
            raise ScheduleError(f"spatial dimension must be a positive integer, got d={self.d}")
        if not self.g_c > 0:
            raise ScheduleError(f"critical coupling must be positive, got g_c={self.g_c}")

    @property
    def znu(self) -> float:
        return self.z * self.nu


ISING_CHAIN = CriticalData()


@dataclass(frozen=True)
class AlphaPolicy:
    """Power-law rule zeta = c * tau_Q**alpha tying the adiabatic coefficient to tau_Q.

    alpha in [1/4, 1) keeps Ising-chain runs on the Kibble-Zurek branch;
    alpha = 0 with a large prefactor is the fixed-zeta mode used for noisy
    drives.
    """

    alpha: float
    c: float = 1.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ScheduleError(f"alpha must be >= 0, got {self.alpha}")
        if not self.c > 0:
            raise ScheduleError(f"prefactor must be positive, got c={self.c}")

    def zeta(self, tau_Q: float) -> float:
        return self.c * tau_Q**self.alpha


def _sgn_branch(t):
    """-1 on t < 0, +1 on t >= 0 (the t = 0 point sits on the second branch)."""
    return np.where(np.asarray(t) < 0, -1.0, 1.0)


@dataclass(frozen=True)
class QuenchProtocol:
    """A fully resolved quench schedule with its window ``[t_i, t_f]``.

    Instances are immutable; construct them through :func:`make_linear`,
    :func:`make_nlq`, :func:`make_oai` or :func:`make_nloai`.  ``theta`` is
    the half-width of the allowed window for the adiabatic-impulse kinds and
    ``None`` for the unbounded linear/nonlinear ramps.
    """

    kind: str            # "linear" | "nlq" | "oai" | "nloai"
    tau_Q: float
    g_i: float
    g_f: float
    crit: CriticalData
    zeta: float | None = None
    r: float = 1.0
    theta: float | None = field(default=None)
    t_i: float = field(default=0.0)
    t_f: float = field(default=0.0)

    # -- schedule evaluation -------------------------------------------------

    def _check_window(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t_i) or np.any(t > self.t_f):
            raise WindowError(
                f"t outside window [{self.t_i!r}, {self.t_f!r}] for {self.kind} schedule"
            )
        return t

    def epsilon(self, t):
        """Dimensionless distance from criticality, (g(t) - g_c)/g_c.

        Accepts scalars or arrays; ``t`` must lie inside ``[t_i, t_f]``.
        """
        t = self._check_window(t)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if self.kind in ("linear", "nlq"):
            eps = -_sgn_branch(t) * np.abs(t / self.tau_Q) ** self.r
        else:
            znu = self.crit.znu
            c_over = self.zeta / znu
            amp = (self.zeta / (znu * self.theta)) ** (1.0 / znu)
            base = (c_over / (self.theta - np.abs(t))) ** (1.0 / znu) - amp
            # base >= 0 on each branch; tiny negative round-off is clipped
            base = np.maximum(base, 0.0)
            eps = -_sgn_branch(t) * base**self.r
        eps = eps + 0.0  # fold -0.0 into +0.0
        return float(eps[0]) if scalar else eps

    def g_of_t(self, t):
        """Coupling g(t) = g_c (1 + epsilon(t))."""
        return self.crit.g_c * (1.0 + self.epsilon(t))

    def epsilon_dot(self, t):
        """Analytic d(epsilon)/dt; strictly negative inside the window."""
        t = self._check_window(t)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if self.kind in ("linear", "nlq"):
            dot = -(self.r / self.tau_Q) * np.abs(t / self.tau_Q) ** (self.r - 1.0)
        else:
            znu = self.crit.znu
            c_over = self.zeta / znu
            amp = (self.zeta / (znu * self.theta)) ** (1.0 / znu)
            rest = self.theta - np.abs(t)
            base = np.maximum((c_over / rest) ** (1.0 / znu) - amp, 0.0)
            dot = (
                -self.r
                * base ** (self.r - 1.0)
                * (1.0 / znu)
                * c_over ** (1.0 / znu)
                * rest ** (-(1.0 + znu) / znu)
            )
        dot = dot + 0.0  # fold -0.0 into +0.0
        return float(dot[0]) if scalar else dot

    def timescales(self, t, aux: bool = False):
        """Drive timescale |eps/eps_dot| and relaxation time |eps|^{-z nu}.

        With ``aux=True`` the threshold-riding auxiliary variable (the
        schedule before its constant offset is removed) is used instead; its
        drive/relax ratio equals zeta identically, which makes it a useful
        self-check.  At t = 0 the relaxation time diverges and ``inf`` is
        returned as a documented marker.
        """
        t = self._check_window(t)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        znu = self.crit.znu
        if aux:
            if self.kind in ("linear", "nlq"):
                raise ScheduleError("auxiliary timescales exist only for oai/nloai schedules")
            eps1 = ((znu / self.zeta) * (self.theta - np.abs(t))) ** (-1.0 / znu)
            k = 1.0 / znu
            dot1 = k * (znu / self.zeta) ** (-k) * (self.theta - np.abs(t)) ** (-k - 1.0)
            drive = eps1 / dot1
            relax = eps1 ** (-znu)
        else:
            eps = np.abs(np.atleast_1d(self.epsilon(t)))
            dot = np.abs(np.atleast_1d(self.epsilon_dot(t)))
            with np.errstate(divide="ignore", invalid="ignore"):
                drive = np.where(eps == 0.0, 0.0, eps / np.where(dot == 0.0, np.nan, dot))
                relax = np.where(eps == 0.0, np.inf, eps ** (-znu))
        if scalar:
            return float(drive[0]), float(relax[0])
        return drive, relax

    def total_time(self) -> float:
        """Duration t_f - t_i of the quench."""
        return self.t_f - self.t_i

    def time_bound(self) -> float:
        """Upper bound 2*theta on the duration; infinite for linear/nlq ramps."""
        if self.theta is None:
            return math.inf
        return 2.0 * self.theta


def _check_couplings(g_i: float, g_f: float, crit: CriticalData) -> tuple[float, float]:
    if not g_i > crit.g_c:
        raise ScheduleError(f"g_i={g_i} must exceed the critical coupling g_c={crit.g_c}")
    if not (crit.g_c > g_f >= 0.0):
        raise ScheduleError(f"g_f={g_f} must satisfy 0 <= g_f < g_c={crit.g_c}")
    eps_i = (g_i - crit.g_c) / crit.g_c
    eps_f = (g_f - crit.g_c) / crit.g_c
    return eps_i, eps_f


def make_linear(tau_Q: float, g_i: float, g_f: float, crit: CriticalData = ISING_CHAIN) -> QuenchProtocol:
    """Linear quench epsilon(t) = -t/tau_Q with g(t_i) = g_i, g(t_f) = g_f."""
    return make_nlq(tau_Q, 1.0, g_i, g_f, crit, _kind="linear")


def make_nlq(
    tau_Q: float,
    r: float,
    g_i: float,
    g_f: float,
    crit: CriticalData = ISING_CHAIN,
    _kind: str = "nlq",
) -> QuenchProtocol:
    """Nonlinear quench epsilon(t) = -sgn(t) |t/tau_Q|^r.

    The r = 1 case is the plain linear quench; it is also the limit of the
    adiabatic-impulse schedules as zeta grows without bound.
    """
    if not tau_Q > 0:
        raise ScheduleError(f"tau_Q must be positive, got {tau_Q}")
    if g_i <= g_f:
        raise ScheduleError(f"window must be monotone: g_i={g_i} <= g_f={g_f}")
    if r < 1:
        raise ScheduleError(f"nonlinearity exponent must satisfy r >= 1, got {r}")
    eps_i, eps_f = _check_couplings(g_i, g_f, crit)
    t_i = -tau_Q * eps_i ** (1.0 / r)
    t_f = tau_Q * (-eps_f) ** (1.0 / r)
    return QuenchProtocol(
        kind=_kind, tau_Q=float(tau_Q), g_i=float(g_i), g_f=float(g_f),
        crit=crit, zeta=None, r=float(r), theta=None, t_i=t_i, t_f=t_f,
    )


def make_oai(
    tau_Q: float,
    zeta: float,
    g_i: float,
    g_f: float,
    crit: CriticalData = ISING_CHAIN,
    kz_mode: bool = True,
) -> QuenchProtocol:
    """Optimized adiabatic-impulse schedule.

    The window half-width is theta = (1/z nu)(zeta^{1/z nu} tau_Q)^{z nu/(1+z nu)}
    (theta = sqrt(zeta tau_Q) for z nu = 1) and the endpoints follow in closed
    form from epsilon(t_i) = (g_i - g_c)/g_c and epsilon(t_f) = (g_f - g_c)/g_c.

    ``kz_mode=True`` (default) rejects zeta >= tau_Q, which would leave the
    regime where the schedule shortens the evolution; pass ``kz_mode=False``
    to build large-zeta schedules, e.g. when checking the linear-quench limit.
    A warning is emitted when the constant offset (zeta/tau_Q)^{1/(1+z nu)}
    removed at the critical point is not small.
    """
    return make_nloai(tau_Q, zeta, 1.0, g_i, g_f, crit, kz_mode=kz_mode, _kind="oai")


def make_nloai(
    tau_Q: float,
    zeta: float,
    r: float,
    g_i: float,
    g_f: float,
    crit: CriticalData = ISING_CHAIN,
    kz_mode: bool = True,
    _kind: str = "nloai",
) -> QuenchProtocol:
    """Nonlinear optimized adiabatic-impulse schedule; r = 1 recovers :func:`make_oai`."""
    if not tau_Q > 0:
        raise ScheduleError(f"tau_Q must be positive, got {tau_Q}")
    if not zeta > 0:
        raise ScheduleError(f"zeta must be positive, got {zeta}")
    if r < 1:
        raise ScheduleError(f"nonlinearity exponent must satisfy r >= 1, got {r}")
    if kz_mode and zeta >= tau_Q:
        raise ScheduleError(
            f"zeta={zeta} >= tau_Q={tau_Q} leaves the adiabatic-impulse regime; "
            "use kz_mode=False if a large-zeta schedule is intended"
        )
    eps_i, eps_f = _check_couplings(g_i, g_f, crit)
    znu = crit.znu
    offset = (zeta / tau_Q) ** (1.0 / (1.0 + znu))
    if offset > 0.1:
        warnings.warn(
            f"(zeta/tau_Q)^(1/(1+z nu)) = {offset:.3g} > 0.1: the constant offset at the "
            "critical point is not small and the schedule is only marginally adiabatic",
            AdiabaticityWarning,
            stacklevel=2,
        )
    theta = (1.0 / znu) * (zeta ** (1.0 / znu) * tau_Q) ** (znu / (1.0 + znu))
    c_over = zeta / znu
    amp = (zeta / (znu * theta)) ** (1.0 / znu)
    # epsilon(t_i) = eps_i > 0 and epsilon(t_f) = eps_f < 0, inverted in closed form
    t_i = -theta + c_over * (eps_i ** (1.0 / r) + amp) ** (-znu)
    t_f = theta - c_over * ((-eps_f) ** (1.0 / r) + amp) ** (-znu)
    return QuenchProtocol(
        kind=_kind, tau_Q=float(tau_Q), g_i=float(g_i), g_f=float(g_f),
        crit=crit, zeta=float(zeta), r=float(r), theta=theta, t_i=t_i, t_f=t_f,
    )


# -- schedule export ----------------------------------------------------------

SCHEDULE_COLUMNS = ("t", "epsilon", "g", "drive_timescale", "relax_timescale")


def schedule_table(p: QuenchProtocol, samples: int = 2000) -> np.ndarray:
    """Sample the schedule on a uniform grid (t = 0 is always included).

    Returns an array with columns ``t, epsilon, g, drive_timescale,
    relax_timescale``; the relaxation time at t = 0 is ``inf``.
    """
    if samples < 2:
        raise ScheduleError(f"need at least 2 samples, got {samples}")
    ts = np.linspace(p.t_i, p.t_f, samples)
    if not np.any(ts == 0.0):
        ts = np.insert(ts, np.searchsorted(ts, 0.0), 0.0)
    eps = p.epsilon(ts)
    g = p.crit.g_c * (1.0 + eps)
    drive, relax = p.timescales(ts)
    return np.column_stack([ts, eps, g, drive, relax])


def write_schedule_csv(p: QuenchProtocol, path, samples: int = 2000) -> None:
    """Dump the sampled schedule as CSV with round-trip decimal formatting."""
    table = schedule_table(p, samples)
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCHEDULE_COLUMNS)
        for row in table:
            writer.writerow([repr(float(x)) for x in row])
