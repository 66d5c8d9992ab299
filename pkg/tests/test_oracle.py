#!/usr/bin/env python3
"""
Tests for the brute-force oracle: truncated spaces, eigensolving, Dicke and
quadratic Hamiltonians, symplectic normal modes and Kerr sectors
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to Python path
sys.path.append(str(Path(__file__).parent.parent))

from core.criticality import (
    closed_form_coefficients,
    critical_coupling,
    optomech_couplings,
    polariton_frequencies,
    spectrum_at_lower_frequency,
)
from core.errors import (
    ConfigurationError,
    ContractError,
    CriticalPointError,
    DomainError,
    PhaseError,
    ResourceError,
    TruncationError,
)
from core.models import QuadraticModel
from oracle.eigensolve import OperatorMatrix, hermitian_eigensolve, parity_resolved_spectrum
from oracle.hamiltonians import (
    bosonized_dicke_hamiltonian,
    dicke_hamiltonian,
    quadratic_hamiltonian,
)
from oracle.kerr import fit_kerr, optomech_sector_spectrum
from oracle.space import build_space
from oracle.symplectic import (
    QuadraticForm,
    extract_polariton_couplings,
    quadratic_form_from_model,
    symplectic_diagonalize,
    symplectic_residual,
)


def _mu064_modes():
    model = closed_form_coefficients(4.0, 1.25, 0.64, omega_m=1.0)
    return model, symplectic_diagonalize(quadratic_form_from_model(model))


class TestTruncatedSpace:
    @pytest.mark.parametrize("cutoffs,j,dim", [([5], 1, 18), ([3, 3], None, 16), ([60], 12, 1525)])
    def test_dimensions(self, cutoffs, j, dim):
        assert build_space(cutoffs, j).dim == dim

    def test_cap_exceeded(self):
        with pytest.raises(ResourceError):
            build_space([100, 100], dimension_cap=5000)

    def test_invalid_cutoff(self):
        with pytest.raises(DomainError):
            build_space([0])
        with pytest.raises(DomainError):
            build_space([3], j=0.3)

    def test_canonical_commutator_except_top_level(self):
        space = build_space([5])
        a, a_dag = space.annihilation(0), space.creation(0)
        commutator = a @ a_dag - a_dag @ a
        expected = np.eye(6)
        expected[-1, -1] = -5.0
        assert np.allclose(commutator, expected, atol=1e-12)

    def test_spin_algebra(self):
        space = build_space([1], j=1.5)
        commutator = space.spin_plus() @ space.spin_minus() - space.spin_minus() @ space.spin_plus()
        assert np.allclose(commutator, 2.0 * space.spin_z(), atol=1e-12)
        assert np.allclose(space.spin_x(), (space.spin_plus() + space.spin_minus()) / 2.0)

    def test_missing_spin_sector(self):
        with pytest.raises(ConfigurationError):
            build_space([3]).spin_z()


class TestHermitianEigensolve:
    def test_spin_flip(self):
        result = hermitian_eigensolve(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert result.eigenvalues == pytest.approx([-1.0, 1.0], abs=1e-14)

    def test_diagonal_sorted(self):
        result = hermitian_eigensolve(np.diag([3.0, -2.0, 0.5]))
        assert result.eigenvalues == pytest.approx([-2.0, 0.5, 3.0])

    def test_non_hermitian_rejected(self):
        with pytest.raises(ContractError):
            hermitian_eigensolve(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_residuals_reported(self):
        rng = np.random.default_rng(3)
        matrix = rng.normal(size=(40, 40))
        result = hermitian_eigensolve(matrix + matrix.T)
        assert result.max_residual < 1e-9 * np.max(np.abs(result.eigenvalues))

    def test_decoupled_dicke_is_tensor_sum(self):
        space = build_space([4], j=1)
        result = hermitian_eigensolve(dicke_hamiltonian(space, 1.0, 2.5, 0.0))
        expected = sorted(n * 1.0 + m * 2.5 for n in range(5) for m in (-1, 0, 1))
        assert result.eigenvalues == pytest.approx(expected, abs=1e-12)


class TestDickeHamiltonian:
    def test_decoupled_ground_energy(self):
        space = build_space([5], j=1)
        result = hermitian_eigensolve(dicke_hamiltonian(space, 1.0, 4.0, 0.0))
        assert result.ground_energy == pytest.approx(-4.0)

    def test_requires_spin_sector(self):
        with pytest.raises(ConfigurationError):
            dicke_hamiltonian(build_space([3, 3]), 1.0, 4.0, 1.0)

    @pytest.mark.parametrize("G", [0.3, 1.0, 1.25, 2.0])
    def test_parity_conserved(self, G):
        space = build_space([20], j=3)
        hamiltonian = dicke_hamiltonian(space, 1.0, 4.0, G)
        assert hamiltonian.hermitian_deviation() <= 1e-12
        assert hamiltonian.commutes_with_diagonal(space.parity_diagonal()) <= 1e-12

    def test_ground_state_has_definite_parity(self):
        space = build_space([30], j=2)
        result = hermitian_eigensolve(dicke_hamiltonian(space, 1.0, 4.0, 1.25))
        assert abs(result.expectation(space.parity())) == pytest.approx(1.0, abs=1e-10)

    def test_spin_polarization_at_n16(self):
        space = build_space([60], j=8)
        sectors = parity_resolved_spectrum(dicke_hamiltonian(space, 1.0, 4.0, 1.25),
                                           space.parity_diagonal())
        ground = min(sectors.values(), key=lambda s: s.result.ground_energy)
        vector = ground.result.eigenvectors[:, 0]
        spin_z = space.spin_z()[np.ix_(ground.indices, ground.indices)]
        polarization = float(vector @ spin_z @ vector) / 8.0
        assert abs(polarization + 0.64) < 0.15

    def test_bosonized_spectrum_matches_dicke(self):
        n_spins = 4
        dicke = hermitian_eigensolve(
            dicke_hamiltonian(build_space([30], j=n_spins / 2), 1.0, 4.0, 1.25)
        )
        bosonized = hermitian_eigensolve(
            bosonized_dicke_hamiltonian(build_space([30, n_spins]), 1.0, 4.0, 1.25, n_spins)
        )
        shift = 4.0 * n_spins / 2.0
        assert bosonized.eigenvalues[:12] - shift == pytest.approx(dicke.eigenvalues[:12], abs=1e-9)

    def test_alternative_divisor_differs(self):
        exact = hermitian_eigensolve(
            bosonized_dicke_hamiltonian(build_space([30, 4]), 1.0, 4.0, 1.25, 4)
        )
        alternative = hermitian_eigensolve(
            bosonized_dicke_hamiltonian(build_space([30, 4]), 1.0, 4.0, 1.25, 4, hp_divisor="2N")
        )
        assert np.max(np.abs(exact.eigenvalues[:6] - alternative.eigenvalues[:6])) > 1e-3

    def test_bosonized_cutoff_above_divisor(self):
        with pytest.raises(DomainError):
            bosonized_dicke_hamiltonian(build_space([5, 6]), 1.0, 4.0, 1.0, 4)


class TestQuadraticHamiltonian:
    def test_decoupled_gaps(self):
        space = build_space([4, 4])
        model = QuadraticModel(omega_m=1.0, Omega_q=5.125, G_eff=0.0)
        gaps = hermitian_eigensolve(quadratic_hamiltonian(space, model)).gaps()
        assert gaps[0] == pytest.approx(1.0)
        assert np.min(np.abs(gaps - model.Omega_q)) < 1e-12

    def test_mu064_gaps_match_closed_form(self):
        space = build_space([40, 40])
        model = closed_form_coefficients(4.0, 1.25, 0.64, omega_m=1.0)
        spectrum = polariton_frequencies(1.0, 4.0, 1.25, 0.64)
        gaps = hermitian_eigensolve(quadratic_hamiltonian(space, model)).gaps()

        assert gaps[0] == pytest.approx(spectrum.omega_minus, rel=1e-6)
        assert np.min(np.abs(gaps - spectrum.omega_plus)) / spectrum.omega_plus < 1e-6

    def test_normal_phase_gap_closes_towards_cp(self):
        space = build_space([30, 30])
        gaps = []
        for G in (0.6, 0.7, 0.8):
            model = QuadraticModel(omega_m=1.0, Omega_q=4.0, G_eff=G)
            gap = hermitian_eigensolve(quadratic_hamiltonian(space, model)).gaps()[0]
            modes = symplectic_diagonalize(quadratic_form_from_model(model))
            assert gap == pytest.approx(modes.frequencies[0], rel=1e-6)
            gaps.append(gap)

        assert gaps == pytest.approx([0.791, 0.703, 0.588], abs=1e-3)
        assert gaps[0] > gaps[1] > gaps[2]

    def test_requires_two_modes(self):
        model = closed_form_coefficients(4.0, 1.25, 0.64, omega_m=1.0)
        with pytest.raises(ConfigurationError):
            quadratic_hamiltonian(build_space([4], j=1), model)


class TestSymplecticDiagonalize:
    def test_decoupled_frequencies(self):
        form = QuadraticForm(np.array([3.0, 1.0]), np.zeros((2, 2)), np.zeros(2))
        modes = symplectic_diagonalize(form)
        assert modes.frequencies == pytest.approx([1.0, 3.0])
        assert modes.stable

    def test_decoupled_couplings(self):
        form = QuadraticForm(np.array([1.0, 3.0]), np.zeros((2, 2)), np.zeros(2))
        g_plus, g_minus = extract_polariton_couplings(symplectic_diagonalize(form), g0=1.0)
        assert g_plus == pytest.approx(0.0, abs=1e-15)
        assert g_minus == pytest.approx(1.0)

    def test_mu064_matches_closed_form(self):
        _, modes = _mu064_modes()
        spectrum = polariton_frequencies(1.0, 4.0, 1.25, 0.64)
        assert modes.frequencies[0] == pytest.approx(spectrum.omega_minus, rel=1e-10)
        assert modes.frequencies[1] == pytest.approx(spectrum.omega_plus, rel=1e-10)
        assert modes.frequencies == pytest.approx([0.76431761, 6.28317743], rel=1e-7)
        assert symplectic_residual(modes.mode_vectors) < 1e-10

    def test_mu064_couplings(self):
        _, modes = _mu064_modes()
        g_plus, g_minus = extract_polariton_couplings(modes, g0=1.0)
        report = optomech_couplings(1.0, 1.0, polariton_frequencies(1.0, 4.0, 1.25, 0.64))
        assert g_plus == pytest.approx(report.g_plus, rel=1e-10)
        assert g_minus == pytest.approx(report.g_minus, rel=1e-10)
        assert (g_plus, g_minus) == pytest.approx((0.041250, 1.137703), rel=1e-5)

    def test_continued_below_threshold_unstable(self):
        G = critical_coupling(1.0, 4.0) / math.sqrt(1.2)
        model = closed_form_coefficients(4.0, G, 1.2, omega_m=1.0, continue_below_threshold=True)
        modes = symplectic_diagonalize(quadratic_form_from_model(model))
        assert not modes.stable
        assert modes.squared_frequencies[0] < 0
        with pytest.raises(PhaseError):
            extract_polariton_couplings(modes, g0=1.0)

    def test_zero_mode_at_cp(self):
        g_crit = critical_coupling(1.0, 4.0)
        model = closed_form_coefficients(4.0, g_crit, 1.0, omega_m=1.0)
        modes = symplectic_diagonalize(quadratic_form_from_model(model))
        assert modes.stable
        assert modes.zero_modes == (0,)
        assert modes.mode_vectors is None
        with pytest.raises(CriticalPointError):
            extract_polariton_couplings(modes, g0=1.0)

    def test_random_superradiant_points_match_closed_form(self):
        rng = np.random.default_rng(20240607)
        for _ in range(120):
            omega_m = rng.uniform(0.5, 2.0)
            omega_q = omega_m * rng.uniform(1.0, 10.0)
            mu = rng.uniform(0.05, 0.99)
            G = critical_coupling(omega_m, omega_q) / math.sqrt(mu)

            model = closed_form_coefficients(omega_q, G, mu, omega_m=omega_m)
            modes = symplectic_diagonalize(quadratic_form_from_model(model))
            spectrum = polariton_frequencies(omega_m, omega_q, G, mu)
            report = optomech_couplings(1.0, omega_m, spectrum)
            g_plus, g_minus = extract_polariton_couplings(modes, g0=1.0)

            assert modes.frequencies[0] == pytest.approx(spectrum.omega_minus, rel=1e-10)
            assert modes.frequencies[1] == pytest.approx(spectrum.omega_plus, rel=1e-10)
            assert g_minus == pytest.approx(report.g_minus, rel=1e-10)
            assert g_plus == pytest.approx(report.g_plus, rel=1e-10)

    def test_near_cp_enhancement(self):
        mu, spectrum = spectrum_at_lower_frequency(1.0, 10.0, 1e-3)
        G = critical_coupling(1.0, 10.0) / math.sqrt(mu)
        model = closed_form_coefficients(10.0, G, mu, omega_m=1.0)
        _, g_minus = extract_polariton_couplings(
            symplectic_diagonalize(quadratic_form_from_model(model)), g0=1.0
        )
        assert g_minus == pytest.approx(optomech_couplings(1.0, 1.0, spectrum).g_minus, rel=1e-6)

    @pytest.mark.parametrize("omega_minus", [1e-5, 1e-6])
    def test_soft_mode_resolved_close_to_cp(self, omega_minus):
        mu, spectrum = spectrum_at_lower_frequency(1.0, 10.0, omega_minus)
        G = critical_coupling(1.0, 10.0) / math.sqrt(mu)
        model = closed_form_coefficients(10.0, G, mu, omega_m=1.0)
        modes = symplectic_diagonalize(quadratic_form_from_model(model))

        assert modes.stable
        assert modes.zero_modes == ()
        assert modes.frequencies[0] == pytest.approx(omega_minus, rel=1e-3)
        _, g_minus = extract_polariton_couplings(modes, g0=1.0)
        assert g_minus == pytest.approx(optomech_couplings(1.0, 1.0, spectrum).g_minus, rel=1e-3)

    def test_headline_enhancement_from_oracle(self):
        mu, _ = spectrum_at_lower_frequency(1.0, 10.0, 1e-6)
        G = critical_coupling(1.0, 10.0) / math.sqrt(mu)
        model = closed_form_coefficients(10.0, G, mu, omega_m=1.0)
        _, g_minus = extract_polariton_couplings(
            symplectic_diagonalize(quadratic_form_from_model(model)), g0=1.0
        )
        assert g_minus == pytest.approx(995.037, rel=1e-3)

    def test_zero_mode_at_cp_irrational_coupling(self):
        g_crit = critical_coupling(1.0, 10.0)
        model = closed_form_coefficients(10.0, g_crit, 1.0, omega_m=1.0)
        modes = symplectic_diagonalize(quadratic_form_from_model(model))
        assert modes.zero_modes == (0,)
        with pytest.raises(CriticalPointError):
            extract_polariton_couplings(modes, g0=1.0)

    def test_form_validation(self):
        with pytest.raises(ContractError):
            QuadraticForm(np.array([1.0, 2.0]), np.array([[0.0, 1.0], [0.5, 0.0]]), np.zeros(2))
        with pytest.raises(ContractError):
            QuadraticForm(np.array([1.0, -2.0]), np.zeros((2, 2)), np.zeros(2))


class TestKerrSectors:
    def test_vacuum_sector_ladder(self):
        energies = optomech_sector_spectrum(0, 5.0, 1.0, 0.1)
        assert energies[:5] == pytest.approx([0.0, 1.0, 2.0, 3.0, 4.0], abs=1e-12)

    def test_two_photon_ground_energy(self):
        energies = optomech_sector_spectrum(2, 5.0, 1.0, 0.1)
        assert energies[0] == pytest.approx(9.96, rel=1e-10)

    @pytest.mark.parametrize("g_minus", [0.1, 0.3, 0.5])
    def test_sector_levels_are_displaced_ladder(self, g_minus):
        chi = g_minus ** 2
        for n in range(4):
            energies = optomech_sector_spectrum(n, 5.0, 1.0, g_minus)
            expected = [5.0 * n - chi * n * n + m for m in range(3)]
            assert energies[:3] == pytest.approx(expected, rel=1e-8)

    def test_fit_recovers_kerr(self):
        fit = fit_kerr(5.0, 1.0, 0.1)
        assert fit.chi == pytest.approx(0.01, rel=1e-8)
        assert fit.omega_a == pytest.approx(5.0, rel=1e-8)
        assert fit.offset == pytest.approx(0.0, abs=1e-10)

    def test_truncation_detected(self):
        with pytest.raises(TruncationError):
            optomech_sector_spectrum(3, 5.0, 1.0, 2.0, n_max=5)

    def test_negative_photon_number(self):
        with pytest.raises(DomainError):
            optomech_sector_spectrum(-1, 5.0, 1.0, 0.1)


def test_operator_matrix_must_be_square():
    with pytest.raises(ContractError):
        OperatorMatrix(np.zeros((2, 3)))
