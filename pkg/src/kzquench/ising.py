"""Momentum-mode data for the transverse-field Ising chain.

After the Jordan-Wigner and Bogoliubov reduction the chain splits into
independent two-level problems, one per quasimomentum q in (0, pi).  Each
mode sees the 2x2 Hamiltonian

    H_q(g) = [[eps_q(g), delta_q], [delta_q, -eps_q(g)]],

with eps_q(g) = 2(g - cos q) and delta_q = 2 sin q, whose eigenvalues are
+-omega_q(g) with the quasiparticle dispersion omega_q = 2 sqrt(1 + g^2 -
2 g cos q).  Even chains with periodic spins live in the antiperiodic
fermion sector, q_m = pi (2m - 1)/N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateModeError",
    "ModeState",
    "ModeHamiltonian",
    "ModeGrid",
    "dispersion",
    "ground_state",
    "excited_state",
    "mode_grid",
]


class DegenerateModeError(ValueError):
    """Eigenproblem requested exactly at a gap-closing point."""


@dataclass(frozen=True)
class ModeState:
    """Normalized Bogoliubov amplitude pair (u, v) for one mode."""

    u: complex
    v: complex

    def norm_sq(self) -> float:
        return abs(self.u) ** 2 + abs(self.v) ** 2

    def overlap(self, other: "ModeState") -> complex:
        """Inner product <self|other>."""
        return self.u.conjugate() * other.u + self.v.conjugate() * other.v


@dataclass(frozen=True)
class ModeHamiltonian:
    """Hamiltonian data for quasimomentum q at coupling g supplied per call."""

    q: float

    def h_z(self, g: float) -> float:
        return 2.0 * (g - math.cos(self.q))

    @property
    def h_x(self) -> float:
        return 2.0 * math.sin(self.q)

    def matrix(self, g: float) -> np.ndarray:
        hz, hx = self.h_z(g), self.h_x
        return np.array([[hz, hx], [hx, -hz]])


def dispersion(g, q):
    """Quasiparticle energy omega_q = 2 sqrt(1 + g^2 - 2 g cos q); vectorized.

    Evaluated as (1 - g)^2 + 4 g sin^2(q/2), which is exact near the gap
    closing where the textbook form cancels catastrophically.
    """
    g = np.asarray(g, dtype=float)
    q = np.asarray(q, dtype=float)
    out = 2.0 * np.sqrt(np.maximum((1.0 - g) ** 2 + 4.0 * g * np.sin(0.5 * q) ** 2, 0.0))
    return float(out) if out.ndim == 0 else out


def _eigenpair_angles(g: float, q: float) -> tuple[float, float]:
    """Half-angle (cos, sin) of the Bogoliubov rotation diagonalizing H_q."""
    hz = 2.0 * (g - math.cos(q))
    hx = 2.0 * math.sin(q)
    if hz == 0.0 and hx == 0.0:
        raise DegenerateModeError(
            f"gap closes at (g={g}, q={q}): the mode eigenproblem is degenerate"
        )
    phi = math.atan2(hx, hz)  # in [0, pi] when hx >= 0
    return math.cos(0.5 * phi), math.sin(0.5 * phi)


def _fix_phase(u: float, v: float) -> tuple[float, float]:
    # first nonzero component real and >= 0
    lead = u if u != 0.0 else v
    if lead < 0.0:
        return -u, -v
    return u, v


def ground_state(g: float, q: float) -> ModeState:
    """Lower eigenvector (-omega_q) of H_q; first nonzero component >= 0."""
    c, s = _eigenpair_angles(g, q)
    u, v = _fix_phase(s, -c)
    return ModeState(complex(u), complex(v))


def excited_state(g: float, q: float) -> ModeState:
    """Upper eigenvector (+omega_q) of H_q; first nonzero component >= 0."""
    c, s = _eigenpair_angles(g, q)
    u, v = _fix_phase(c, s)
    return ModeState(complex(u), complex(v))


def ground_state_arrays(g: float, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ground states over a momentum array (real amplitudes)."""
    hz = 2.0 * (g - np.cos(q))
    hx = 2.0 * np.sin(q)
    phi = np.arctan2(hx, hz)
    u = np.sin(0.5 * phi)
    v = -np.cos(0.5 * phi)
    flip = np.where(u != 0.0, np.sign(u), np.sign(v))
    return u * flip, v * flip


def excited_state_arrays(g: float, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized excited states over a momentum array (real amplitudes)."""
    hz = 2.0 * (g - np.cos(q))
    hx = 2.0 * np.sin(q)
    phi = np.arctan2(hx, hz)
    u = np.cos(0.5 * phi)
    v = np.sin(0.5 * phi)
    flip = np.where(u != 0.0, np.sign(u), np.sign(v))
    return u * flip, v * flip


@dataclass(frozen=True)
class ModeGrid:
    """Antiperiodic-sector momenta q_m = pi (2m - 1)/N, m = 1..N/2."""

    N: int
    q: np.ndarray

    def __len__(self) -> int:
        return self.q.size


def mode_grid(N: int) -> ModeGrid:
    """Momentum grid for an even chain of N sites (N/2 modes in (0, pi))."""
    if N % 2 != 0 or N < 4:
        raise ValueError(f"N must be even and >= 4, got {N}")
    m = np.arange(1, N // 2 + 1)
    q = np.pi * (2 * m - 1) / N
    q.setflags(write=False)
    return ModeGrid(N=N, q=q)
