import math

import numpy as np
import pytest

from kzquench import (
    FrozenDrive,
    IntegrationError,
    ModeDensity,
    StepPolicy,
    defect_density,
    evolve_lindblad,
    evolve_pure,
    excitation_probability,
    excited_state,
    ground_state,
    kz_reference,
    make_linear,
    make_nloai,
    make_oai,
    sudden_quench,
)
from kzquench.dynamics import _evolve_pure_batch, runs_row, write_modes_csv

pytestmark = pytest.mark.filterwarnings("ignore::kzquench.AdiabaticityWarning")


class TestEvolvePure:
    def test_static_drive_keeps_eigenstate(self):
        drive = FrozenDrive(g=2.0, t_i=0.0, t_f=5.0)
        final = evolve_pure(drive, 1.0)
        gs = ground_state(2.0, 1.0)
        overlap = abs(gs.overlap(final))
        assert overlap == pytest.approx(1.0, abs=1e-8)

    def test_landau_zener_probability(self):
        p = make_linear(200, 2.0, 0.0)
        state = evolve_pure(p, 0.02)
        prob = excitation_probability(state, 0.02, 0.0)
        assert prob == pytest.approx(math.exp(-2 * math.pi * 200 * 0.02**2), abs=0.02)
        assert prob == pytest.approx(0.605, abs=0.02)

    def test_step_halving_self_consistency(self):
        p = make_oai(50, 8.0, 2.0, 0.0)
        probs = []
        for eta in (0.02, 0.01):
            state = evolve_pure(p, 0.5, StepPolicy(eta=eta))
            probs.append(excitation_probability(state, 0.5, 0.0))
        assert abs(probs[0] - probs[1]) < 1e-6

    def test_norm_preserved(self):
        p = make_oai(400, 32, 2.0, 0.0)
        for q in (0.01, 0.7, 2.9):
            state = evolve_pure(p, q)
            assert abs(state.norm_sq() - 1.0) < 1e-8

    def test_unstable_step_aborts(self):
        p = make_linear(50, 2.0, 0.0)
        with pytest.raises(IntegrationError, match="reduce eta"):
            evolve_pure(p, 2.5, StepPolicy(eta=60.0, check_interval=1))

    def test_time_reversal_returns_initial_state(self):
        p = make_oai(100, 16, 2.0, 0.0)
        q = np.array([0.3])
        policy = StepPolicy()
        u1, v1, _ = _evolve_pure_batch(p, q, policy)
        ub, vb, _ = _evolve_pure_batch(p, q, policy, y0=(u1, v1), t_span=(p.t_f, p.t_i))
        gs = ground_state(p.g_of_t(p.t_i), 0.3)
        fidelity = abs(np.conj(gs.u) * ub[0] + np.conj(gs.v) * vb[0])
        assert fidelity == pytest.approx(1.0, abs=1e-6)

    def test_deterministic(self):
        p = make_oai(120, 12, 2.0, 0.0)
        a = evolve_pure(p, 0.4)
        b = evolve_pure(p, 0.4)
        assert a.u == b.u and a.v == b.v


class TestEvolveLindblad:
    def test_noiseless_matches_pure(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            tau = float(rng.uniform(20, 200))
            q = float(rng.uniform(0.02, np.pi - 0.02))
            p = make_linear(tau, 2.0, 0.0)
            pure = excitation_probability(evolve_pure(p, q), q, 0.0)
            noisy = excitation_probability(evolve_lindblad(p, q, 0.0), q, 0.0)
            assert abs(pure - noisy) < 1e-6

    def test_density_invariants_after_noisy_run(self):
        p = make_linear(150, 2.0, 0.0)
        rho = evolve_lindblad(p, 0.8, 0.05)
        assert rho.hermiticity_defect() < 1e-10
        assert rho.trace() == pytest.approx(1.0, abs=1e-8)
        assert rho.min_eigenvalue() >= -1e-10

    def test_dephasing_kills_coherence(self):
        mags = []
        for T in (10.0, 20.0, 30.0, 40.0, 50.0):
            drive = FrozenDrive(g=2.0, t_i=0.0, t_f=T)
            rho = evolve_lindblad(drive, 1.0, 0.3)
            mags.append(abs(rho.rho[0, 1]))
        assert all(a > b for a, b in zip(mags, mags[1:]))

    def test_noise_rate_scale_strengthens_decay(self):
        drive = FrozenDrive(g=2.0, t_i=0.0, t_f=30.0)
        base = abs(evolve_lindblad(drive, 1.0, 0.2).rho[0, 1])
        faster = abs(evolve_lindblad(drive, 1.0, 0.2, noise_rate_scale=4.0).rho[0, 1])
        assert faster < base

    def test_rejects_negative_noise(self):
        with pytest.raises(ValueError):
            evolve_lindblad(make_linear(50, 2.0, 0.0), 0.3, -0.1)


class TestExcitationProbability:
    def test_eigenstate_limits(self):
        g_f, q = 0.4, 1.1
        gs, ex = ground_state(g_f, q), excited_state(g_f, q)
        assert excitation_probability(gs, q, g_f) == pytest.approx(0.0, abs=1e-14)
        assert excitation_probability(ex, q, g_f) == pytest.approx(1.0, abs=1e-14)

    def test_maximally_mixed(self):
        rho = ModeDensity(rho=0.5 * np.eye(2, dtype=complex))
        assert excitation_probability(rho, 0.7, 0.2) == pytest.approx(0.5)

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            excitation_probability(np.eye(2), 0.7, 0.2)


class TestSuddenQuench:
    def test_no_quench_no_defects(self):
        assert sudden_quench(2.0, 2.0, 200).n == 0.0

    def test_hand_overlap_value(self):
        state = ground_state(2.0, np.pi / 2)
        prob = excitation_probability(state, np.pi / 2, 0.0)
        assert prob == pytest.approx((1 - 1 / math.sqrt(5)) / 2, abs=1e-12)
        res = sudden_quench(2.0, 0.0, 2000)
        idx = np.argmin(np.abs(res.q - np.pi / 2))
        assert res.p[idx] == pytest.approx(prob, abs=1e-3)

    def test_density_matches_estimate(self):
        assert sudden_quench(2.0, 0.0, 2000).n == pytest.approx(0.375, abs=0.02)

    def test_rejects_inverted_window(self):
        with pytest.raises(ValueError):
            sudden_quench(0.5, 2.0)


class TestDefectDensity:
    def test_kz_value(self):
        res = defect_density(make_oai(200, 32, 2.0, 0.0), N=2000)
        assert res.n == pytest.approx(kz_reference(200), rel=0.10)

    def test_grid_refinement(self):
        n2 = defect_density(make_oai(200, 32, 2.0, 0.0), N=2000).n
        n4 = defect_density(make_oai(200, 32, 2.0, 0.0), N=4000).n
        assert abs(n2 - n4) < 1e-4

    def test_noise_adds_defects(self):
        p = make_linear(2000, 2.0, 0.0)
        clean = defect_density(p, N=500, W=0.0)
        noisy = defect_density(p, N=500, W=0.01)
        assert noisy.n > clean.n

    def test_probabilities_in_unit_interval(self):
        res = defect_density(make_oai(80, 10, 2.0, 0.0), N=500)
        assert np.all(res.p >= -1e-8)
        assert np.all(res.p <= 1 + 1e-8)

    def test_aggregation_matches_stored_modes(self):
        res = defect_density(make_oai(100, 16, 2.0, 0.0), N=300)
        assert res.n == (2.0 / res.N) * np.sum(res.p)

    def test_vanishing_window_routed_to_sudden(self):
        p = make_oai(1.0, 1e-9, 2.0, 0.0)
        res = defect_density(p, N=500)
        assert res.routed_sudden
        assert res.steps == 0
        assert res.n == sudden_quench(2.0, 0.0, 500).n

    def test_short_wave_oscillations_suppressed_by_zeta(self):
        small = defect_density(make_oai(10, 0.8, 2.0, 0.0), N=400)
        large = defect_density(make_oai(10, 32.0, 2.0, 0.0, kz_mode=False), N=400)

        def shortwave(res):
            mask = (res.q > 1.0) & (res.q < np.pi)
            return res.p[mask]

        p_small, p_large = shortwave(small), shortwave(large)
        # pronounced coherent structure at small zeta, flattened at large zeta
        assert p_small.sum() > 10 * p_large.sum()

        def pronounced_maxima(pq, floor=0.01):
            mid = pq[1:-1]
            return int(np.sum((mid > pq[:-2]) & (mid > pq[2:]) & (mid > floor)))

        assert pronounced_maxima(p_small) > pronounced_maxima(p_large) == 0

    def test_rejects_bad_arguments(self):
        p = make_linear(50, 2.0, 0.0)
        with pytest.raises(ValueError):
            defect_density(p, N=7)
        with pytest.raises(ValueError):
            defect_density(p, N=100, W=-0.5)


class TestSerialization:
    def test_modes_csv_deterministic(self, tmp_path):
        paths = []
        for name in ("a.csv", "b.csv"):
            res = defect_density(make_oai(60, 9, 2.0, 0.0), N=128)
            path = tmp_path / name
            write_modes_csv(res, path)
            paths.append(path.read_bytes())
        assert paths[0] == paths[1]

    def test_modes_csv_round_trip(self, tmp_path):
        res = defect_density(make_oai(60, 9, 2.0, 0.0), N=64)
        path = tmp_path / "modes.csv"
        write_modes_csv(res, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "q,p_q"
        q_back = np.array([float(line.split(",")[0]) for line in lines[1:]])
        p_back = np.array([float(line.split(",")[1]) for line in lines[1:]])
        assert np.array_equal(q_back, res.q)
        assert np.array_equal(p_back, res.p)

    def test_runs_row_fields(self):
        res = defect_density(make_nloai(90, 11, 2.0, 5.0, 0.0), N=64, W=0.01)
        row = runs_row(res, alpha=0.25)
        assert row[0] == "nloai"
        assert float(row[1]) == 90.0
        assert float(row[2]) == 11.0
        assert float(row[3]) == 0.25
        assert float(row[4]) == 2.0
        assert float(row[5]) == 0.01
        assert int(row[6]) == 64
        assert float(row[10]) == res.n

    def test_runs_row_blank_alpha_and_zeta(self):
        res = defect_density(make_linear(50, 2.0, 0.0), N=64)
        row = runs_row(res)
        assert row[2] == "" and row[3] == ""


class TestStepPolicy:
    def test_dt_scaling(self):
        policy = StepPolicy(eta=0.02)
        assert policy.dt_for(6.0) == pytest.approx(0.02 / 6.0)
        assert policy.dt_for(0.5) == pytest.approx(0.02)      # floor at 1
        assert policy.dt_for(1.0, W=3.0) == pytest.approx(0.02 / 9.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            StepPolicy(eta=0.0)
        with pytest.raises(ValueError):
            StepPolicy(check_interval=0)
