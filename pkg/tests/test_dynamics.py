"""Spectral decomposition, propagation, closed forms, and concurrence."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellchain.chain import (
    TridiagonalHamiltonian,
    engineered_couplings,
    full_hilbert_hamiltonian,
    halved_hamiltonian,
    one_excitation_hamiltonian,
    one_excitation_indices,
)
from bellchain.dynamics import (
    ANTISYMMETRIC,
    SYMMETRIC,
    NumericFailure,
    SiteAmplitudeState,
    analytic_center_to_end,
    analytic_halved_transfer,
    basis_state,
    bell_decomposition,
    bell_time,
    center_excited_state,
    center_to_end_amplitude,
    concurrence_ab,
    eigendecompose,
    end_to_end_amplitude,
    evolve,
)
from oracles import dense_propagate, end_pair_density, wootters_concurrence

SQRT2 = math.sqrt(2.0)


def engineered_eig(n, mu=1.0):
    return eigendecompose(one_excitation_hamiltonian(engineered_couplings(n, mu)))


class TestEigendecompose:
    def test_uniform_3x3(self):
        # characteristic polynomial by hand: lambda (lambda^2 - 2) = 0
        eig = eigendecompose(TridiagonalHamiltonian(3, (1.0, 1.0)))
        np.testing.assert_allclose(eig.eigenvalues, [-SQRT2, 0.0, SQRT2], atol=1e-12)
        k0 = int(np.argmin(np.abs(eig.eigenvalues)))
        assert eig.parity[k0] == ANTISYMMETRIC
        assert abs(eig.eigenvectors[1, k0]) < 1e-12

    def test_two_sites(self):
        eig = eigendecompose(TridiagonalHamiltonian(2, (0.7,)))
        np.testing.assert_allclose(eig.eigenvalues, [-0.7, 0.7], atol=1e-12)

    def test_n9_engineered_parity_census(self):
        eig = engineered_eig(9)
        anti = [k for k, p in enumerate(eig.parity) if p == ANTISYMMETRIC]
        assert len(anti) == 4
        for k in anti:
            assert abs(eig.eigenvectors[4, k]) < 1e-10

    @pytest.mark.parametrize("n", [3, 5, 9, 21, 41])
    def test_orthonormal_and_eigen_residual(self, n):
        h = one_excitation_hamiltonian(engineered_couplings(n, 1.0))
        eig = eigendecompose(h)
        u = eig.eigenvectors
        np.testing.assert_allclose(u.T @ u, np.eye(n), atol=1e-10)
        dense = h.to_dense()
        scale = np.linalg.norm(dense, 2)
        residual = dense @ u - u * eig.eigenvalues[np.newaxis, :]
        assert np.max(np.abs(residual)) < 1e-10 * scale

    @pytest.mark.parametrize("n", [3, 5, 9, 21])
    def test_parity_labels_match_mirror_residuals(self, n):
        eig = engineered_eig(n)
        for k in range(n):
            u = eig.eigenvectors[:, k]
            if eig.parity[k] == SYMMETRIC:
                assert np.max(np.abs(u - u[::-1])) < 1e-9
            else:
                assert np.max(np.abs(u + u[::-1])) < 1e-9

    def test_sign_normalization_first_component_positive(self):
        eig = engineered_eig(9)
        assert np.all(eig.eigenvectors[0, :] > 0)

    @pytest.mark.parametrize("n", [3, 5, 9, 21, 41])
    def test_spectrum_symmetric_about_zero_with_zero_mode(self, n):
        # zero diagonal makes the chain bipartite: eigenvalues come in
        # +/- pairs and odd dimension forces one exact zero
        eig = engineered_eig(n)
        np.testing.assert_allclose(
            eig.eigenvalues, -eig.eigenvalues[::-1], atol=1e-10
        )
        assert np.min(np.abs(eig.eigenvalues)) < 1e-10

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            eigendecompose(TridiagonalHamiltonian(1, ()))
        with pytest.raises(ValueError):
            eigendecompose(TridiagonalHamiltonian(3, (1.0, -1.0)))

    def test_numeric_failure_carries_dimension(self):
        failure = NumericFailure(17)
        assert failure.dimension == 17
        assert "17" in str(failure)


class TestStates:
    def test_basis_state_bounds(self):
        s = basis_state(5, 1)
        assert s.amplitudes[0] == 1.0
        with pytest.raises(ValueError):
            basis_state(5, 0)
        with pytest.raises(ValueError):
            basis_state(5, 6)

    def test_center_state(self):
        s = center_excited_state(9)
        assert s.amplitudes[4] == 1.0
        with pytest.raises(ValueError):
            center_excited_state(4)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            SiteAmplitudeState(np.array([1.0, 1.0]))

    def test_amplitudes_are_read_only(self):
        s = basis_state(3, 2)
        with pytest.raises(ValueError):
            s.amplitudes[0] = 1.0


class TestEvolve:
    def test_identity_at_t0(self):
        eig = engineered_eig(5)
        s = center_excited_state(5)
        out = evolve(eig, s, 0.0)
        np.testing.assert_allclose(out.amplitudes, s.amplitudes, atol=1e-12)

    def test_center_to_ends_at_bell_time(self):
        eig = engineered_eig(5)
        out = evolve(eig, center_excited_state(5), math.pi)
        assert abs(out.amplitudes[0]) ** 2 == pytest.approx(0.5, abs=1e-12)
        assert abs(out.amplitudes[4]) ** 2 == pytest.approx(0.5, abs=1e-12)

    def test_group_property(self):
        eig = engineered_eig(9)
        s = center_excited_state(9)
        one_step = evolve(eig, evolve(eig, s, 0.7), 1.9)
        two_step = evolve(eig, s, 2.6)
        np.testing.assert_allclose(
            one_step.amplitudes, two_step.amplitudes, atol=1e-11
        )

    def test_norm_drift_over_long_times(self):
        eig = engineered_eig(9)
        s = center_excited_state(9)
        for t in np.linspace(0.0, 100.0, 11):
            out = evolve(eig, s, float(t))
            assert abs(np.sum(np.abs(out.amplitudes) ** 2) - 1.0) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evolve(engineered_eig(5), center_excited_state(9), 1.0)

    @given(t=st.floats(min_value=0.0, max_value=50.0))
    @settings(max_examples=30, deadline=None)
    def test_norm_preserved_any_time(self, t):
        eig = engineered_eig(7)
        out = evolve(eig, basis_state(7, 2), t)
        assert abs(np.sum(np.abs(out.amplitudes) ** 2) - 1.0) < 1e-12


class TestTransferAmplitudes:
    def test_center_to_end_zero_at_t0(self):
        assert abs(center_to_end_amplitude(engineered_eig(7), 0.0)) < 1e-14

    def test_n5_value_at_bell_time(self):
        amp = center_to_end_amplitude(engineered_eig(5), math.pi)
        assert amp.real == pytest.approx(-1 / SQRT2, abs=1e-12)
        assert amp.imag == pytest.approx(0.0, abs=1e-12)

    def test_n9_value_at_bell_time(self):
        amp = center_to_end_amplitude(engineered_eig(9), math.pi)
        assert amp.real == pytest.approx(+1 / SQRT2, abs=1e-12)
        assert amp.imag == pytest.approx(0.0, abs=1e-12)

    def test_rejects_even_dimension(self):
        eig = eigendecompose(TridiagonalHamiltonian(4, (1.0, 1.0, 1.0)))
        with pytest.raises(ValueError):
            center_to_end_amplitude(eig, 1.0)

    @pytest.mark.parametrize("n", [5, 9, 13])
    def test_mirror_equality_of_both_ends(self, n):
        eig = engineered_eig(n)
        c = (n - 1) // 2
        for t in np.linspace(0.0, 2 * math.pi, 17):
            state = evolve(eig, center_excited_state(n), float(t))
            assert abs(state.amplitudes[0] - state.amplitudes[-1]) < 1e-10

    @pytest.mark.parametrize("n", [5, 9, 21])
    def test_symmetric_sector_carries_the_whole_amplitude(self, n):
        eig = engineered_eig(n)
        c = (n - 1) // 2
        mask = np.array([p == SYMMETRIC for p in eig.parity])
        for t in (0.3, 1.1, math.pi):
            full = center_to_end_amplitude(eig, t)
            weights = eig.eigenvectors[0, :] * eig.eigenvectors[c, :]
            restricted = np.sum(
                weights[mask] * np.exp(-1j * eig.eigenvalues[mask] * t)
            )
            assert abs(full - restricted) < 1e-10

    @pytest.mark.parametrize("n", [5, 9, 13])
    def test_halved_chain_reproduces_full_amplitude(self, n):
        profile = engineered_couplings(n, 1.0)
        eig_full = eigendecompose(one_excitation_hamiltonian(profile))
        eig_half = eigendecompose(halved_hamiltonian(profile))
        for t in np.linspace(0.1, 2 * math.pi, 13):
            full = center_to_end_amplitude(eig_full, float(t))
            half = end_to_end_amplitude(eig_half, float(t))
            assert abs(full - half / SQRT2) < 1e-10


class TestClosedForms:
    def test_center_to_end_n5(self):
        assert analytic_center_to_end(5, 1.0, math.pi) == pytest.approx(
            -1 / SQRT2, abs=1e-15
        )

    def test_center_to_end_zero_time(self):
        assert analytic_center_to_end(21, 1.0, 0.0) == 0.0

    def test_center_to_end_n21_modulus(self):
        value = analytic_center_to_end(21, 2.0, math.pi / 4)
        assert abs(value) == pytest.approx(2.0**-5 / SQRT2, rel=1e-12)

    def test_rejects_even_n(self):
        with pytest.raises(ValueError):
            analytic_center_to_end(4, 1.0, 1.0)

    def test_halved_transfer_peaks_at_one(self):
        for m in (2, 3, 8, 21):
            assert abs(analytic_halved_transfer(m, 1.0, math.pi)) == pytest.approx(
                1.0, abs=1e-15
            )

    def test_halved_transfer_m3_value(self):
        assert analytic_halved_transfer(3, 1.0, math.pi / 2) == pytest.approx(
            -0.5, abs=1e-15
        )

    def test_halved_transfer_rejects_m1(self):
        with pytest.raises(ValueError):
            analytic_halved_transfer(1, 1.0, 1.0)

    @pytest.mark.parametrize("mu", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("n", [3, 5, 9, 15, 21])
    def test_numeric_matches_closed_form(self, n, mu):
        eig = engineered_eig(n, mu)
        for t in np.linspace(0.0, 2 * math.pi / mu, 50):
            numeric = center_to_end_amplitude(eig, float(t))
            analytic = analytic_center_to_end(n, mu, float(t))
            assert abs(numeric - analytic) < 1e-9


class TestBellTime:
    def test_values(self):
        assert bell_time(math.pi) == 1.0
        assert bell_time(2 * math.pi) == 0.5
        assert bell_time(1e4) == pytest.approx(3.1416e-4, rel=1e-4)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            bell_time(0.0)
        with pytest.raises(ValueError):
            bell_time(-1.0)


class TestBellDecomposition:
    def test_pure_end_pair(self):
        amps = np.zeros(5, dtype=complex)
        amps[0] = amps[4] = 1 / SQRT2
        d = bell_decomposition(SiteAmplitudeState(amps))
        assert d.beta_norm == 0.0
        assert d.alpha_first == pytest.approx(d.alpha_last)

    def test_interior_basis_state(self):
        d = bell_decomposition(basis_state(4, 2))
        assert d.alpha_first == 0.0
        assert d.alpha_last == 0.0
        assert d.beta_norm == 1.0
        assert d.phase == 0.0

    def test_budget_identity(self):
        rng = np.random.default_rng(5)
        raw = rng.normal(size=7) + 1j * rng.normal(size=7)
        state = SiteAmplitudeState(raw / np.linalg.norm(raw))
        d = bell_decomposition(state)
        total = abs(d.alpha_first) ** 2 + abs(d.alpha_last) ** 2 + d.beta_norm**2
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_phase_at_bell_time(self):
        # (-i)^((n-1)/2): pi for n=5, 0 for n=9
        for n, expected in ((5, math.pi), (9, 0.0)):
            state = evolve(engineered_eig(n), center_excited_state(n), math.pi)
            d = bell_decomposition(state)
            delta = (d.phase - expected + math.pi) % (2 * math.pi) - math.pi
            assert abs(delta) < 1e-10

    def test_mirror_evolution_keeps_end_amplitudes_equal(self):
        state = evolve(engineered_eig(9), center_excited_state(9), 1.234)
        d = bell_decomposition(state)
        assert abs(d.alpha_first - d.alpha_last) < 1e-10


class TestConcurrence:
    def test_center_state_zero(self):
        assert concurrence_ab(center_excited_state(9)) == 0.0

    def test_engineered_at_bell_time(self):
        state = evolve(engineered_eig(9), center_excited_state(9), math.pi)
        assert concurrence_ab(state) == pytest.approx(1.0, abs=1e-10)

    def test_skewed_state_value(self):
        amps = np.zeros(5, dtype=complex)
        amps[0] = math.sqrt(0.8)
        amps[4] = math.sqrt(0.2)
        state = SiteAmplitudeState(amps)
        assert concurrence_ab(state) == pytest.approx(0.8, abs=1e-12)
        rho = end_pair_density(state.amplitudes)
        assert wootters_concurrence(rho) == pytest.approx(0.8, abs=1e-10)

    @given(seed=st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_matches_wootters_oracle(self, seed):
        # the oracle's zero spin-flip eigenvalues carry ~1e-16 solver
        # noise that the square root amplifies to ~1e-8
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=7) + 1j * rng.normal(size=7)
        state = SiteAmplitudeState(raw / np.linalg.norm(raw))
        oracle = wootters_concurrence(end_pair_density(state.amplitudes))
        assert concurrence_ab(state) == pytest.approx(oracle, abs=5e-8)
        assert 0.0 <= concurrence_ab(state) <= 1.0 + 1e-12


class TestFullHilbertOracle:
    @pytest.mark.parametrize("n", [3, 5])
    def test_sector_evolution_matches_dense(self, n):
        profile = engineered_couplings(n, 1.0)
        eig = eigendecompose(one_excitation_hamiltonian(profile))
        full = full_hilbert_hamiltonian(profile)
        idx = one_excitation_indices(n)
        psi0 = np.zeros(2**n, dtype=complex)
        psi0[idx[(n - 1) // 2]] = 1.0
        for t in (0.4, math.pi):
            dense = dense_propagate(full, psi0, t)
            sector = evolve(eig, center_excited_state(n), t)
            np.testing.assert_allclose(
                dense[idx], sector.amplitudes, atol=1e-9
            )
            off_sector = np.delete(dense, idx)
            assert np.max(np.abs(off_sector)) < 1e-12
