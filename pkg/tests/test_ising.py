import numpy as np
import pytest

from kzquench import (
    DegenerateModeError,
    ModeHamiltonian,
    dispersion,
    excited_state,
    ground_state,
    mode_grid,
)


class TestDispersion:
    def test_gap_closes_at_critical_point(self):
        assert dispersion(1.0, 0.0) == 0.0
        assert dispersion(1.0, 1e-8) == pytest.approx(2e-8, rel=1e-6)

    def test_reference_values(self):
        qs = np.linspace(0.1, 3.0, 7)
        assert np.allclose(dispersion(0.0, qs), 2.0)
        assert dispersion(2.0, 0.0) == pytest.approx(2.0)

    def test_even_in_q(self):
        qs = np.linspace(0.01, 3.1, 50)
        for g in (0.3, 1.0, 2.4):
            assert np.allclose(dispersion(g, qs), dispersion(g, -qs), rtol=0, atol=1e-14)

    def test_minimum_is_gap(self):
        qs = np.linspace(1e-6, np.pi, 200001)
        for g in (0.2, 0.7, 1.0, 1.5, 3.0):
            assert np.min(dispersion(g, qs)) == pytest.approx(2 * abs(g - 1), abs=1e-5)


class TestEigenstates:
    def test_hand_solved_case(self):
        gs = ground_state(2.0, np.pi / 2)
        assert gs.u.real == pytest.approx(0.2298, abs=1e-4)
        assert gs.v.real == pytest.approx(-0.9732, abs=1e-4)

    def test_field_polarized_limit(self):
        gs = ground_state(1e8, np.pi / 2)
        ex = excited_state(1e8, np.pi / 2)
        assert abs(gs.v) == pytest.approx(1.0, abs=1e-7)
        assert abs(gs.overlap(ex)) < 1e-12

    def test_orthonormality_random_sample(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            g = rng.uniform(0.0, 6.0)
            q = rng.uniform(1e-3, np.pi - 1e-3)
            gs, ex = ground_state(g, q), excited_state(g, q)
            assert abs(gs.norm_sq() - 1) < 1e-14
            assert abs(ex.norm_sq() - 1) < 1e-14
            assert abs(gs.overlap(ex)) < 1e-14

    def test_eigenvector_residual(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            g = rng.uniform(0.0, 5.0)
            q = rng.uniform(1e-3, np.pi - 1e-3)
            H = ModeHamiltonian(q).matrix(g)
            w = dispersion(g, q)
            for state, lam in ((ground_state(g, q), -w), (excited_state(g, q), w)):
                vec = np.array([state.u, state.v])
                assert np.linalg.norm(H @ vec - lam * vec) < 1e-12

    def test_phase_convention(self):
        rng = np.random.default_rng(13)
        for _ in range(300):
            g = rng.uniform(0.0, 5.0)
            q = rng.uniform(1e-3, np.pi - 1e-3)
            for state in (ground_state(g, q), excited_state(g, q)):
                lead = state.u if state.u != 0 else state.v
                assert lead.imag == 0 and lead.real >= 0

    def test_degenerate_point_raises(self):
        with pytest.raises(DegenerateModeError):
            ground_state(1.0, 0.0)
        with pytest.raises(DegenerateModeError):
            excited_state(1.0, 0.0)


class TestModeHamiltonian:
    def test_components(self):
        mh = ModeHamiltonian(np.pi / 2)
        assert mh.h_z(2.0) == pytest.approx(4.0)
        assert mh.h_x == pytest.approx(2.0)
        H = mh.matrix(2.0)
        assert np.allclose(H, [[4.0, 2.0], [2.0, -4.0]])

    def test_transverse_positive_inside_zone(self):
        for q in np.linspace(0.01, np.pi - 0.01, 25):
            assert ModeHamiltonian(q).h_x > 0


class TestModeGrid:
    def test_small_grid(self):
        grid = mode_grid(4)
        assert np.allclose(grid.q, [np.pi / 4, 3 * np.pi / 4])

    def test_large_grid(self):
        grid = mode_grid(2000)
        assert len(grid) == 1000
        assert grid.q[-1] == pytest.approx(np.pi * 1999 / 2000)
        assert np.all(np.diff(grid.q) > 0)
        assert grid.q[0] > 0 and grid.q[-1] < np.pi

    def test_rejects_bad_sizes(self):
        for N in (5, 2, 0, -8):
            with pytest.raises(ValueError):
                mode_grid(N)

    def test_quadrature_exact_for_trig(self):
        # midpoint rule on this grid sums trig polynomials exactly
        for N in (8, 100, 2000):
            grid = mode_grid(N)
            est = (2.0 / N) * np.sum(np.sin(grid.q) ** 2)
            assert est == pytest.approx(0.5, abs=1e-14)

    def test_quadrature_second_order_generic(self):
        # (1/pi) * int_0^pi exp(q) dq, a smooth non-periodic integrand
        exact = (np.exp(np.pi) - 1.0) / np.pi
        errs = []
        for N in (200, 400, 800):
            grid = mode_grid(N)
            errs.append(abs((2.0 / N) * np.sum(np.exp(grid.q)) - exact))
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)
        assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.05)
