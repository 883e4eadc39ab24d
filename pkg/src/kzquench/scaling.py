"""Scaling laws: power-law fits, crossover collapse, noisy-drive optima.

Everything here is closed-form arithmetic or ordinary least squares in
log-log space, matching the straight-line fits used to analyze defect
density curves.  The model zoo:

* Kibble-Zurek reference for the Ising chain, n_KZ = 1/(2 pi sqrt(2 tau_Q)).
* Crossover in the adiabatic coefficient, n/n_KZ - 1 = x (tau_Q^{-1/4} zeta)^{-y}.
* Noisy-drive (anti-Kibble-Zurek) model n = a tau^{-beta} + b(W^{4/(1+alpha)} tau)^{(1+alpha)/2}
  whose minimum defines the optimal quench time, tau_opt ~ W^{-s}.
* Nonlinear quench exponents and the finite-size adiabatic-time estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .protocols import CriticalData, ISING_CHAIN

__all__ = [
    "FitDomainError",
    "NoMinimumError",
    "PowerLawFit",
    "ZetaCollapse",
    "AkzModel",
    "kz_reference",
    "sudden_reference",
    "fit_power_law",
    "fit_zeta_collapse",
    "defect_model",
    "optimal_tau",
    "theory_exponents",
    "adiabatic_time_for_size",
]


class FitDomainError(ValueError):
    """Fit input outside its domain (too few points, non-positive values, empty window)."""


class NoMinimumError(ValueError):
    """A curve expected to bracket an interior minimum does not."""


def kz_reference(tau_Q) -> float:
    """Ising-chain Kibble-Zurek defect density n_KZ = 1/(2 pi sqrt(2 tau_Q))."""
    tau_Q = np.asarray(tau_Q, dtype=float)
    if np.any(tau_Q <= 0):
        raise ValueError("tau_Q must be positive")
    out = 1.0 / (2.0 * np.pi * np.sqrt(2.0 * tau_Q))
    return float(out) if out.ndim == 0 else out


def sudden_reference(g_i: float) -> float:
    """Instantaneous-quench defect density estimate 1/2 - 1/(4 g_i)."""
    return 0.5 - 1.0 / (4.0 * g_i)


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares line in log-log space: y = prefactor * x**exponent."""

    exponent: float
    log_prefactor: float
    r_squared: float
    n_points: int

    @property
    def prefactor(self) -> float:
        return math.exp(self.log_prefactor)

    def predict(self, x):
        return self.prefactor * np.asarray(x, dtype=float) ** self.exponent


def fit_power_law(points) -> PowerLawFit:
    """Ordinary least squares on (log x, log y); needs >= 3 strictly positive points."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise FitDomainError("expected a sequence of (x, y) pairs")
    if pts.shape[0] < 3:
        raise FitDomainError(f"need at least 3 points, got {pts.shape[0]}")
    if np.any(pts <= 0):
        raise FitDomainError("power-law fits require strictly positive x and y")
    lx = np.log(pts[:, 0])
    ly = np.log(pts[:, 1])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return PowerLawFit(
        exponent=float(slope), log_prefactor=float(intercept),
        r_squared=r2, n_points=int(pts.shape[0]),
    )


@dataclass(frozen=True)
class ZetaCollapse:
    """Crossover law n/n_KZ - 1 = x * (tau_Q^{-1/4} zeta)^{-y}."""

    x: float
    y: float
    fit: PowerLawFit

    def excess(self, tau_Q, zeta):
        s = np.asarray(zeta, dtype=float) * np.asarray(tau_Q, dtype=float) ** -0.25
        return self.x * s ** (-self.y)


# collapse-window bounds for the scaled variable tau_Q^{-1/4} zeta and the
# minimum relative excess kept in the fit (excludes the saturated branch)
COLLAPSE_WINDOW = (0.2, 1.0)
COLLAPSE_MIN_EXCESS = 0.05


def fit_zeta_collapse(rows) -> ZetaCollapse:
    """Fit the crossover prefactor/exponent from (tau_Q, zeta, n) rows.

    Rows are restricted to the collapse window
    0.2 <= tau_Q^{-1/4} zeta <= 1 with n/n_KZ - 1 >= 0.05; an empty window
    raises :class:`FitDomainError`.
    """
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != 3:
        raise FitDomainError("expected a sequence of (tau_Q, zeta, n) rows")
    tau, zeta, n = data[:, 0], data[:, 1], data[:, 2]
    excess = n / kz_reference(tau) - 1.0
    s = zeta * tau**-0.25
    keep = (s >= COLLAPSE_WINDOW[0]) & (s <= COLLAPSE_WINDOW[1]) & (excess >= COLLAPSE_MIN_EXCESS)
    if not np.any(keep):
        raise FitDomainError(
            "collapse window empty: no rows with "
            f"{COLLAPSE_WINDOW[0]} <= tau_Q^(-1/4) zeta <= {COLLAPSE_WINDOW[1]} "
            f"and n/n_KZ - 1 >= {COLLAPSE_MIN_EXCESS}"
        )
    fit = fit_power_law(np.column_stack([s[keep], excess[keep]]))
    return ZetaCollapse(x=fit.prefactor, y=-fit.exponent, fit=fit)


def defect_model(zeta: float, tau_Q: float, collapse: ZetaCollapse, g_i: float) -> float:
    """Piecewise defect-density prediction across the adiabatic-coefficient range.

    zeta = 0 gives the sudden value; 0 < zeta <= tau_Q^{1/4} the crossover
    branch n_KZ (1 + x (tau_Q^{-1/4} zeta)^{-y}); larger zeta the plain
    Kibble-Zurek value.  The selection is a fixed rule on zeta; the crossover
    branch meets the saturated branch with a residual offset of x * n_KZ at
    the switch point.
    """
    if zeta < 0:
        raise ValueError(f"zeta must be >= 0, got {zeta}")
    if zeta == 0.0:
        return sudden_reference(g_i)
    n_kz = kz_reference(tau_Q)
    if zeta <= tau_Q**0.25:
        return float(n_kz * (1.0 + collapse.excess(tau_Q, zeta)))
    return float(n_kz)


def optimal_tau(curve) -> float:
    """Quench time minimizing defect density on a sampled (tau_Q, n) curve.

    The discrete argmin must be interior (the curve decreases then
    increases); it is refined by a parabola through the three bracketing
    points in (log tau, log n).  Ties go to the smaller tau_Q.
    """
    data = np.asarray(curve, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise NoMinimumError("expected a sequence of (tau_Q, n) rows")
    if data.shape[0] < 5:
        raise NoMinimumError(f"need at least 5 rows to bracket a minimum, got {data.shape[0]}")
    if np.any(data <= 0):
        raise NoMinimumError("tau_Q and n must be strictly positive")
    data = data[np.argsort(data[:, 0])]
    lt = np.log(data[:, 0])
    ln = np.log(data[:, 1])
    i = int(np.argmin(ln))  # argmin returns the first (smallest-tau) tie
    if i == 0 or i == ln.size - 1:
        trend = "increasing" if i == 0 else "decreasing"
        raise NoMinimumError(f"no interior minimum: curve is monotone {trend} at its argmin")
    x0, x1, x2 = lt[i - 1], lt[i], lt[i + 1]
    y0, y1, y2 = ln[i - 1], ln[i], ln[i + 1]
    denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
    if denom == 0.0:
        return float(data[i, 0])
    vertex = x1 - 0.5 * ((x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)) / denom
    return float(math.exp(vertex))


@dataclass(frozen=True)
class AkzModel:
    """Two-power-law defect model under a noisy drive (z nu = 1).

    n(tau_Q, W) = a tau_Q^{-beta} + b (W^{4/(1+alpha)} tau_Q)^{(1+alpha)/2};
    the second term is the noise contribution W^2 * T accumulated over the
    total evolution time.
    """

    a: float
    b: float
    beta: float
    alpha: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("model prefactors a, b must be positive")

    @property
    def alpha_prime(self) -> float:
        return (self.alpha + 1.0) / 2.0

    def predict(self, tau_Q, W):
        tau_Q = np.asarray(tau_Q, dtype=float)
        return self.a * tau_Q**-self.beta + self.b * (
            W ** (4.0 / (1.0 + self.alpha)) * tau_Q
        ) ** self.alpha_prime

    def analytic_optimal_tau(self, W: float) -> float:
        """Exact minimizer of the two-power-law sum for noise strength W."""
        num = self.a * self.beta
        den = self.b * self.alpha_prime * W**2
        return float((num / den) ** (1.0 / (self.alpha_prime + self.beta)))


def theory_exponents(alpha: float, r: float, crit: CriticalData = ISING_CHAIN) -> dict:
    """Predicted exponents for the protocol family.

    Keys: ``s_oai``/``s_lq``/``s_nloai`` (optimal quench time vs noise
    strength, tau_opt ~ W^{-s}), ``beta_kz``/``beta_nlkz`` (defect density vs
    quench time), ``T_exponent`` (total time vs quench time), plus
    ``beta_nlkz_alt`` for the alternative nonlinear form r d nu/(1 + r d nu)
    (the two agree whenever z = d).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    z, nu, d = crit.z, crit.nu, crit.d
    return {
        "s_oai": 4.0 / (2.0 + alpha),
        "s_lq": 4.0 / 3.0,
        "s_nloai": 4.0 * (1.0 + r) / (1.0 + 3.0 * r),
        "beta_kz": z * nu / (1.0 + z * nu),
        "beta_nlkz": d * r * nu / (1.0 + r * z * nu),
        "beta_nlkz_alt": r * d * nu / (1.0 + r * d * nu),
        "T_exponent": (alpha + z * nu) / (1.0 + z * nu),
    }


def adiabatic_time_for_size(
    L: float,
    epsilon_target: float,
    alpha: float,
    crit: CriticalData = ISING_CHAIN,
) -> float:
    """Total-time estimate keeping the defect density of an L-site system below target.

    Pure scaling value eps^{-(1+alpha)/2} * L^{(1+z nu)(1+alpha)/(2 nu)} with
    unit prefactor; useful for ratios, not absolute durations.
    """
    if L < 2:
        raise ValueError(f"L must be >= 2, got {L}")
    if not (0.0 < epsilon_target < 1.0):
        raise ValueError(f"epsilon_target must lie in (0, 1), got {epsilon_target}")
    znu = crit.znu
    return float(
        epsilon_target ** (-(1.0 + alpha) / 2.0)
        * L ** ((1.0 + znu) * (1.0 + alpha) / (2.0 * crit.nu))
    )
