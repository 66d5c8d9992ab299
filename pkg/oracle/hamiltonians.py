"""
Model Hamiltonians on truncated spaces: the finite-N Dicke model, its
Holstein-Primakoff bosonization and the two-mode quadratic forms.
"""

import math

import numpy as np

from config.logging_config import get_logger
from core.errors import ConfigurationError, DomainError
from core.models import QuadraticModel

from .eigensolve import OperatorMatrix
from .space import TruncatedSpace

logger = get_logger(__name__)

HP_DIVISORS = ("N", "2N")


def dicke_hamiltonian(space: TruncatedSpace, omega_m: float, omega_q: float,
                      G: float) -> OperatorMatrix:
    """
    w_m b'b + w_q J_z + (G/sqrt(N)) (b + b')(J_+ + J_-), with N = 2j.

    The coupling normalization puts the critical point at G_c = sqrt(w_m w_q)/2.
    """
    if space.n_modes != 1 or not space.has_spin:
        raise ConfigurationError("Dicke Hamiltonian needs one boson mode and a spin sector")
    n_spins = 2.0 * space.spin_j

    coupling = space.position_sum(0) @ (space.spin_plus() + space.spin_minus())
    entries = (omega_m * space.number(0)
               + omega_q * space.spin_z()
               + (G / math.sqrt(n_spins)) * coupling)

    logger.debug(f"Dicke Hamiltonian dim={space.dim} N={n_spins:g} G={G:g}")
    return OperatorMatrix(entries, label=f"dicke(N={n_spins:g})")


def bosonized_dicke_hamiltonian(space: TruncatedSpace, omega_m: float, omega_q: float,
                                G: float, n_spins: int, hp_divisor: str = "N") -> OperatorMatrix:
    """
    Dicke model after the Holstein-Primakoff map, on two boson modes (b, c):

        w_m b'b + w_q c'c + G (b + b')(c' xi + xi c),   xi = sqrt(1 - c'c / D)

    With D = N and a spin-mode cutoff of N the spectrum equals the Dicke spectrum
    shifted by +w_q N/2. ``hp_divisor="2N"`` evaluates the alternative convention.
    """
    if space.n_modes != 2 or space.has_spin:
        raise ConfigurationError("bosonized Dicke Hamiltonian needs exactly two boson modes")
    if hp_divisor not in HP_DIVISORS:
        raise ConfigurationError(f"hp_divisor must be one of {HP_DIVISORS}, got {hp_divisor!r}")

    divisor = float(n_spins) * (2.0 if hp_divisor == "2N" else 1.0)
    spin_cutoff = space.boson_cutoffs[1]
    if spin_cutoff > divisor:
        raise DomainError(f"spin-mode cutoff {spin_cutoff} exceeds the HP divisor {divisor:g}")

    number_c = space.number(1)
    xi = np.diag(np.sqrt(np.clip(1.0 - np.diag(number_c) / divisor, 0.0, None)))
    lowering = xi @ space.annihilation(1)
    entries = (omega_m * space.number(0)
               + omega_q * number_c
               + G * space.position_sum(0) @ (lowering + lowering.T))

    return OperatorMatrix(entries, label=f"hp(N={n_spins}, D={hp_divisor})")


def quadratic_hamiltonian(space: TruncatedSpace, model: QuadraticModel) -> OperatorMatrix:
    """
    w_m b'b + W_q c'c + E_b X_b + E_c X_c + G_eff X_b X_c + eta X_c^2, with X = a + a'.

    The eta term is kept as written (not normal ordered), so energies carry the
    constant eta relative to the normal-ordered form; compare gaps only.
    """
    if space.n_modes != 2 or space.has_spin:
        raise ConfigurationError("quadratic Hamiltonian needs exactly two boson modes")

    x_b = space.position_sum(0)
    x_c = space.position_sum(1)
    entries = (model.omega_m * space.number(0)
               + model.Omega_q * space.number(1)
               + model.E_b * x_b
               + model.E_c * x_c
               + model.G_eff * (x_b @ x_c)
               + model.eta * (x_c @ x_c))
    return OperatorMatrix(entries, label="quadratic")
