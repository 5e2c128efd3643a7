"""Momentum-space operator, closed-form eigen-system, Fourier oracle."""

import numpy as np
import pytest

from lqw import (
    DegenerateMomentumError,
    GridTooSmallError,
    MomentumPoint,
    StandardInit,
    WalkParams,
    default_grid_size,
    eigen_system,
    evolve,
    grover_coin,
    initial_state,
    momentum_operator,
    propagate_fourier,
)


class TestMomentumPoint:
    def test_kappa_on_unit_circle(self):
        for k in (-3.0, -0.5, 0.1, np.pi):
            assert abs(abs(MomentumPoint(k).kappa) - 1.0) < 1e-14

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            MomentumPoint(-np.pi)
        with pytest.raises(ValueError):
            MomentumPoint(4.0)


class TestMomentumOperator:
    def test_k0_equals_grover(self):
        params = WalkParams(3)
        assert np.array_equal(momentum_operator(params, 0.0), grover_coin(params).astype(complex))

    def test_tau1_entry_at_half_pi(self):
        # entry (1,1) = -tau kappa / delta = -i/3 at k = pi/2
        u = momentum_operator(WalkParams(1), np.pi / 2)
        assert u[0, 0] == pytest.approx(-1j / 3, abs=1e-15)

    @pytest.mark.parametrize("tau", [1, 2, 7])
    def test_unitarity_random_k(self, tau):
        rng = np.random.default_rng(tau)
        d = tau + 2
        for k in rng.uniform(-np.pi, np.pi, size=8):
            u = momentum_operator(WalkParams(tau), k)
            assert np.max(np.abs(u.conj().T @ u - np.eye(d))) < 1e-12


class TestEigenSystem:
    def test_theta_at_pi_tau2(self):
        # cos(theta) = -(tau cos k + 2)/(tau+2) = 0 at k = pi, tau = 2
        system = eigen_system(WalkParams(2), np.pi)
        assert system.theta == pytest.approx(np.pi / 2, abs=1e-14)

    @pytest.mark.parametrize("tau", [1, 2, 5, 10])
    def test_eigen_equation_residuals(self, tau):
        rng = np.random.default_rng(100 + tau)
        params = WalkParams(tau)
        for k in rng.uniform(-np.pi, np.pi, size=20):
            if k == 0.0:
                continue
            system = eigen_system(params, k)
            u = momentum_operator(params, k)
            for j in range(params.delta):
                vec = system.eigenvectors[:, j]
                residual = np.linalg.norm(u @ vec - np.exp(1j * system.omegas[j]) * vec)
                assert residual < 1e-10

    @pytest.mark.parametrize("tau", [1, 4, 9])
    def test_theta_defining_relations(self, tau):
        rng = np.random.default_rng(7 * tau)
        for k in rng.uniform(-np.pi, np.pi, size=10):
            if k == 0.0:
                continue
            theta = eigen_system(WalkParams(tau), k).theta
            assert 0.0 <= theta <= np.pi
            assert np.cos(theta) == pytest.approx(-(tau * np.cos(k) + 2) / (tau + 2), abs=1e-12)
            expected_sin = np.sqrt(tau * (1 - np.cos(k)) * (tau + 4 + tau * np.cos(k))) / (tau + 2)
            assert np.sin(theta) == pytest.approx(expected_sin, abs=1e-12)

    def test_unit_norm_and_orthonormal(self):
        params = WalkParams(6)
        system = eigen_system(params, 1.1)
        v = system.eigenvectors
        gram = v.conj().T @ v
        assert np.max(np.abs(gram - np.eye(params.delta))) < 1e-12

    def test_phase_multiplicities(self):
        for tau in (1, 2, 5, 10):
            system = eigen_system(WalkParams(tau), 0.9)
            omegas = system.omegas
            assert np.sum(np.abs(omegas - np.pi) < 1e-12) == tau - 1
            assert np.sum(np.abs(omegas) < 1e-12) == 1
            # numerical diagonalization confirms the same multiplicities
            lam = np.linalg.eigvals(momentum_operator(WalkParams(tau), 0.9))
            assert np.sum(np.abs(lam + 1) < 1e-8) == tau - 1
            assert np.sum(np.abs(lam - 1) < 1e-8) == 1

    def test_matches_numerical_phases(self):
        # closed-form {theta, -theta, 0, pi} vs numpy diagonalization
        params = WalkParams(5)
        k = 2.2
        system = eigen_system(params, k)
        remaining = list(np.linalg.eigvals(momentum_operator(params, k)))
        for value in np.exp(1j * system.omegas):
            nearest = min(range(len(remaining)), key=lambda i: abs(remaining[i] - value))
            assert abs(remaining.pop(nearest) - value) < 1e-10

    def test_k0_degenerate(self):
        with pytest.raises(DegenerateMomentumError):
            eigen_system(WalkParams(3), 0.0)

    def test_k_pi_raw_vector_degenerates(self):
        # |[kappa_1, kappa_2, 1, ..., 1]|^2 = (tau+4+tau cos k)/(1+cos k) -> inf
        tau = 1
        raw_norm_sq = lambda k: (tau + 4 + tau * np.cos(k)) / (1 + np.cos(k))
        assert raw_norm_sq(np.pi - 1e-4) > 1e7
        # ... while eigen_system returns the finite normalized limit vector
        system = eigen_system(WalkParams(tau), np.pi)
        vec = system.eigenvectors[:, 2]
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(vec, [1j / np.sqrt(2), -1j / np.sqrt(2), 0], atol=1e-14)
        u = momentum_operator(WalkParams(tau), np.pi)
        assert np.linalg.norm(u @ vec - vec) < 1e-12

    def test_k_pi_limit_continuous(self):
        # vector at k = pi - 1e-7 agrees with the exact-endpoint branch
        params = WalkParams(4)
        near = eigen_system(params, np.pi - 1e-7).eigenvectors[:, 2]
        at = eigen_system(params, np.pi).eigenvectors[:, 2]
        assert np.linalg.norm(near - at) < 1e-6

    def test_normalization_factors_rescale_raw_vectors(self):
        params = WalkParams(3)
        k = 1.7
        system = eigen_system(params, k)
        # j = 3: raw vector [kappa_1, kappa_2, 1, ..., 1]
        raw = np.array(
            [2 / (1 + np.exp(-1j * k)), 2 / (1 + np.exp(1j * k))] + [1.0] * 3,
            dtype=complex,
        )
        scaled = np.sqrt(system.normalizations[2]) * raw
        assert np.linalg.norm(scaled) == pytest.approx(1.0, abs=1e-12)


class TestPropagateFourier:
    def test_one_step_matches_direct(self):
        init = StandardInit(1, 0)
        params = WalkParams(1)
        direct = evolve(init, params, 1)
        fourier = propagate_fourier(init, params, 1, grid_size=8)
        assert np.max(np.abs(direct.amplitudes - fourier.amplitudes)) < 1e-12

    def test_t0_reproduces_initial_state(self):
        init = StandardInit(0.6, 0.8j)
        params = WalkParams(4)
        fourier = propagate_fourier(init, params, 0)
        assert np.max(np.abs(fourier.amplitudes - initial_state(init, params).amplitudes)) < 1e-15

    def test_tau10_t50_oracle(self, symmetric_init):
        params = WalkParams(10)
        direct = evolve(symmetric_init, params, 50)
        fourier = propagate_fourier(symmetric_init, params, 50, grid_size=128)
        assert np.max(np.abs(direct.amplitudes - fourier.amplitudes)) < 1e-10

    def test_grid_too_small(self):
        with pytest.raises(GridTooSmallError):
            propagate_fourier(StandardInit(1, 0), WalkParams(1), 10, grid_size=20)

    def test_grid_doubling_insensitive(self, symmetric_init):
        params = WalkParams(3)
        base = propagate_fourier(symmetric_init, params, 20, grid_size=64)
        fine = propagate_fourier(symmetric_init, params, 20, grid_size=128)
        assert np.max(np.abs(base.amplitudes - fine.amplitudes)) < 1e-12

    def test_default_grid_size(self):
        assert default_grid_size(0) == 2
        assert default_grid_size(3) == 8
        assert default_grid_size(50) == 128
        assert default_grid_size(1000) >= 2001
