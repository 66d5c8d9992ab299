"""
Photon-number sectors of the reduced cavity-LBP Hamiltonian

    H = w_a n + w_- d'd + g_- n (d' + d)

For fixed n this is a displaced oscillator: E_m(n) = w_a n - (g_-^2 / w_-) n^2 + w_- m.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from config.logging_config import get_logger
from config.settings import get_settings
from core.errors import DomainError, TruncationError

from .eigensolve import hermitian_eigensolve
from .space import annihilation

logger = get_logger(__name__)

CONVERGED_LEVELS = 3


@dataclass(frozen=True)
class KerrFit:
    photon_numbers: np.ndarray
    lowest_energies: np.ndarray
    omega_a: float
    chi: float
    offset: float


def _sector_energies(n_photon: int, omega_a: float, omega_minus: float, g_minus: float,
                     n_max: int) -> np.ndarray:
    lowering = annihilation(n_max + 1)
    number = np.diag(np.arange(n_max + 1, dtype=float))
    hamiltonian = (omega_a * n_photon * np.eye(n_max + 1)
                   + omega_minus * number
                   + g_minus * n_photon * (lowering + lowering.T))
    return hermitian_eigensolve(hamiltonian).eigenvalues


def optomech_sector_spectrum(n_photon: int, omega_a: float, omega_minus: float, g_minus: float,
                             n_max: int = 40, truncation_tol: Optional[float] = None) -> np.ndarray:
    """
    Eigenvalues of the n-photon sector, ascending.

    The lowest levels are checked against a run with doubled cutoff.

    Raises:
        TruncationError: doubling n_max moves a low level by more than
            ``truncation_tol`` * max(|E|, w_-)
    """
    if n_photon < 0:
        raise DomainError(f"photon number must be >= 0, got {n_photon}")
    if not omega_minus > 0:
        raise DomainError(f"omega_minus must be positive, got {omega_minus}")
    if n_max < CONVERGED_LEVELS:
        raise DomainError(f"n_max must be at least {CONVERGED_LEVELS}, got {n_max}")
    tol = get_settings().truncation_tol if truncation_tol is None else truncation_tol

    energies = _sector_energies(n_photon, omega_a, omega_minus, g_minus, n_max)
    doubled = _sector_energies(n_photon, omega_a, omega_minus, g_minus, 2 * n_max)

    low = energies[:CONVERGED_LEVELS]
    change = np.abs(doubled[:CONVERGED_LEVELS] - low)
    scale = np.maximum(np.abs(low), omega_minus)
    if np.any(change > tol * scale):
        raise TruncationError(
            f"sector n={n_photon} not converged at n_max={n_max}: "
            f"doubling moved levels by up to {float(np.max(change / scale)):.2e} (relative)"
        )
    return energies


def fit_kerr(omega_a: float, omega_minus: float, g_minus: float,
             photon_numbers: Sequence[int] = (0, 1, 2, 3), n_max: int = 40) -> KerrFit:
    """Quadratic fit of the sector ground energies: E(n) = offset + w_a n - chi n^2."""
    photon_numbers = np.asarray(photon_numbers, dtype=int)
    if photon_numbers.size < 3:
        raise DomainError("a quadratic Kerr fit needs at least three photon numbers")

    lowest = np.array([
        optomech_sector_spectrum(int(n), omega_a, omega_minus, g_minus, n_max)[0]
        for n in photon_numbers
    ])
    quadratic, linear, offset = np.polyfit(photon_numbers.astype(float), lowest, 2)

    logger.debug(f"Kerr fit over n={photon_numbers.tolist()}: chi={-quadratic:.12g}")
    return KerrFit(photon_numbers=photon_numbers, lowest_energies=lowest,
                   omega_a=float(linear), chi=float(-quadratic), offset=float(offset))
