"""Fixed-step RK4 kernels for the mode equations (numba-compiled).

The kernels advance every momentum mode simultaneously and run the
invariant checks in-loop; they return a status tuple instead of raising so
the wrappers in :mod:`kzquench.dynamics` can attach context.  fastmath stays
off: IEEE-strict arithmetic keeps runs bitwise reproducible.
"""

from __future__ import annotations

import numba
import numpy as np

STATUS_OK = 0
STATUS_NORM = 1
STATUS_POSITIVITY = 2


@numba.njit(cache=True)
def bdg_integrate(u, v, c2, s2, times, g_nodes, g_mids, check_every, norm_abort):
    """RK4 for i (u, v)' = [[e, d], [d, -e]] (u, v), e = 2 g(t) - c2, d = s2.

    Mutates u, v in place.  The norm of every mode is checked (and rescaled
    to cancel secular round-off) every ``check_every`` steps and at the final
    step.  Returns (status, worst_mode, worst_drift, steps_done).
    """
    K = g_mids.size
    M = u.size
    status = STATUS_OK
    worst_mode = -1
    worst_drift = 0.0
    for k in range(K):
        h = times[k + 1] - times[k]
        h2 = 0.5 * h
        h6 = h / 6.0
        g1 = g_nodes[k]
        gm = g_mids[k]
        g2 = g_nodes[k + 1]
        for m in range(M):
            d = s2[m]
            e1 = 2.0 * g1 - c2[m]
            em = 2.0 * gm - c2[m]
            e2 = 2.0 * g2 - c2[m]
            uu = u[m]
            vv = v[m]
            k1u = -1j * (e1 * uu + d * vv)
            k1v = -1j * (d * uu - e1 * vv)
            u2 = uu + h2 * k1u
            v2 = vv + h2 * k1v
            k2u = -1j * (em * u2 + d * v2)
            k2v = -1j * (d * u2 - em * v2)
            u3 = uu + h2 * k2u
            v3 = vv + h2 * k2v
            k3u = -1j * (em * u3 + d * v3)
            k3v = -1j * (d * u3 - em * v3)
            u4 = uu + h * k3u
            v4 = vv + h * k3v
            k4u = -1j * (e2 * u4 + d * v4)
            k4v = -1j * (d * u4 - e2 * v4)
            u[m] = uu + h6 * (k1u + 2.0 * (k2u + k3u) + k4u)
            v[m] = vv + h6 * (k1v + 2.0 * (k2v + k3v) + k4v)
        if (k + 1) % check_every == 0 or k == K - 1:
            drift = 0.0
            bad = -1
            for m in range(M):
                norm = u[m].real**2 + u[m].imag**2 + v[m].real**2 + v[m].imag**2
                dev = abs(norm - 1.0)
                if dev > drift:
                    drift = dev
                    bad = m
            if drift > norm_abort:
                return STATUS_NORM, bad, drift, k + 1
            for m in range(M):
                norm = u[m].real**2 + u[m].imag**2 + v[m].real**2 + v[m].imag**2
                scale = 1.0 / np.sqrt(norm)
                u[m] = u[m] * scale
                v[m] = v[m] * scale
            if drift > worst_drift:
                worst_drift = drift
                worst_mode = bad
    return status, worst_mode, worst_drift, K


@numba.njit(cache=True)
def lindblad_integrate(rx, ry, rz, c2, hx, gamma, times, g_nodes, g_mids, check_every, pos_abort):
    """RK4 for the Bloch form of the dephasing master equation.

    r' = 2 (h_x, 0, h_z(t)) x r - gamma (r_x, r_y, 0), h_z = 2 g(t) - c2.
    Mutates rx, ry, rz in place; positivity means |r| <= 1 (the smallest
    eigenvalue of rho is (1 - |r|)/2).  Returns (status, worst_mode,
    worst_defect, steps_done).
    """
    K = g_mids.size
    M = rx.size
    status = STATUS_OK
    worst_mode = -1
    worst_defect = 0.0
    for k in range(K):
        h = times[k + 1] - times[k]
        h2 = 0.5 * h
        h6 = h / 6.0
        g1 = g_nodes[k]
        gm = g_mids[k]
        g2 = g_nodes[k + 1]
        for m in range(M):
            d = hx[m]
            hz1 = 2.0 * g1 - c2[m]
            hzm = 2.0 * gm - c2[m]
            hz2 = 2.0 * g2 - c2[m]
            x = rx[m]
            y = ry[m]
            z = rz[m]
            k1x = -2.0 * hz1 * y - gamma * x
            k1y = 2.0 * (hz1 * x - d * z) - gamma * y
            k1z = 2.0 * d * y
            x2 = x + h2 * k1x
            y2 = y + h2 * k1y
            z2 = z + h2 * k1z
            k2x = -2.0 * hzm * y2 - gamma * x2
            k2y = 2.0 * (hzm * x2 - d * z2) - gamma * y2
            k2z = 2.0 * d * y2
            x3 = x + h2 * k2x
            y3 = y + h2 * k2y
            z3 = z + h2 * k2z
            k3x = -2.0 * hzm * y3 - gamma * x3
            k3y = 2.0 * (hzm * x3 - d * z3) - gamma * y3
            k3z = 2.0 * d * y3
            x4 = x + h * k3x
            y4 = y + h * k3y
            z4 = z + h * k3z
            k4x = -2.0 * hz2 * y4 - gamma * x4
            k4y = 2.0 * (hz2 * x4 - d * z4) - gamma * y4
            k4z = 2.0 * d * y4
            rx[m] = x + h6 * (k1x + 2.0 * (k2x + k3x) + k4x)
            ry[m] = y + h6 * (k1y + 2.0 * (k2y + k3y) + k4y)
            rz[m] = z + h6 * (k1z + 2.0 * (k2z + k3z) + k4z)
        if (k + 1) % check_every == 0 or k == K - 1:
            defect = 0.0
            bad = -1
            for m in range(M):
                rlen = np.sqrt(rx[m] ** 2 + ry[m] ** 2 + rz[m] ** 2)
                dev = 0.5 * (rlen - 1.0)  # negative of the smallest eigenvalue
                if dev > defect:
                    defect = dev
                    bad = m
            if defect > pos_abort:
                return STATUS_POSITIVITY, bad, defect, k + 1
            if defect > worst_defect:
                worst_defect = defect
                worst_mode = bad
    return status, worst_mode, worst_defect, K
