"""
Normal modes of quadratic boson Hamiltonians

    H = sum_i w_i a_i'a_i + sum_{i<j} C_ij X_i X_j + sum_i s_i X_i^2,   X_i = a_i + a_i'

through the quadrature-space eigenproblem. With x = X/sqrt(2), p = P/sqrt(2),
H = 1/2 p T p + 1/2 x V x with T = diag(w), V_ii = w_i + 4 s_i, V_ij = 2 C_ij.
The squared normal-mode frequencies are the eigenvalues of T^1/2 V T^1/2.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from config.logging_config import get_logger
from core.errors import ContractError, CriticalPointError, PhaseError
from core.models import QuadraticModel

logger = get_logger(__name__)

# |det| within this many ulps (times n and the Hadamard bound) counts as a zero mode
ZERO_MODE_ROUNDOFF = 8.0
SYMPLECTIC_TOL = 1e-10


def xp_symplectic_form(d: int) -> np.ndarray:
    return np.block(
        [
            [np.zeros((d, d)), np.identity(d)],
            [-np.identity(d), np.zeros((d, d))],
        ]
    )


def symplectic_residual(matrix: np.ndarray) -> float:
    """Max elementwise |S J S^T - J| in xxpp ordering."""
    form = xp_symplectic_form(len(matrix) // 2)
    return float(np.max(np.abs(matrix @ form @ matrix.T - form)))


@dataclass(frozen=True)
class QuadraticForm:
    mode_frequencies: np.ndarray
    xx_couplings: np.ndarray
    squeeze_terms: np.ndarray

    def __post_init__(self):
        n = len(self.mode_frequencies)
        if self.xx_couplings.shape != (n, n) or self.squeeze_terms.shape != (n,):
            raise ContractError("quadratic form coefficient shapes do not match the mode count")
        if not np.allclose(self.xx_couplings, self.xx_couplings.T, rtol=0.0, atol=1e-14):
            raise ContractError("xx_couplings must be symmetric")
        if np.any(np.diag(self.xx_couplings) != 0):
            raise ContractError("single-mode X^2 terms belong in squeeze_terms")
        if np.any(self.mode_frequencies <= 0):
            raise ContractError("mode frequencies must be positive")

    @property
    def n_modes(self) -> int:
        return len(self.mode_frequencies)

    def potential_matrix(self) -> np.ndarray:
        return np.diag(self.mode_frequencies + 4.0 * self.squeeze_terms) + 2.0 * self.xx_couplings


@dataclass(frozen=True)
class SymplecticModes:
    """
    Normal modes in ascending frequency.

    ``mode_vectors`` is the xxpp symplectic matrix S with (x, p) = S (X, P):
    row i, column k holds the weight of normal quadrature k in original quadrature i.
    It is None when a zero or unstable mode makes the transformation singular.
    """

    frequencies: np.ndarray
    squared_frequencies: np.ndarray
    zero_modes: Tuple[int, ...]
    mode_vectors: Optional[np.ndarray]
    stable: bool


def quadratic_form_from_model(model: QuadraticModel) -> QuadraticForm:
    """Two-mode form (b, c) of a displaced-frame model; linear drives are not part of it."""
    return QuadraticForm(
        mode_frequencies=np.array([model.omega_m, model.Omega_q]),
        xx_couplings=np.array([[0.0, model.G_eff], [model.G_eff, 0.0]]),
        squeeze_terms=np.array([0.0, model.eta]),
    )


def _refine_softest(matrix: np.ndarray, squared: np.ndarray) -> np.ndarray:
    """
    Recompute the eigenvalue nearest zero as det(M) / (product of the others).

    eigh resolves it only to ~eps * max|lambda|. Exactly 0.0 when |det| is at
    round-off level relative to the Hadamard bound.
    """
    softest = int(np.argmin(np.abs(squared)))
    others = np.delete(squared, softest)
    if np.any(others == 0.0):
        return squared

    det = float(linalg.det(matrix))
    hadamard = float(np.prod(np.linalg.norm(matrix, axis=1)))
    roundoff = ZERO_MODE_ROUNDOFF * len(squared) * np.finfo(float).eps * hadamard

    refined = squared.copy()
    refined[softest] = 0.0 if abs(det) <= roundoff else det / float(np.prod(others))
    return refined


def symplectic_diagonalize(form: QuadraticForm) -> SymplecticModes:
    kinetic_root = np.sqrt(form.mode_frequencies)
    mass_weighted = np.outer(kinetic_root, kinetic_root) * form.potential_matrix()
    squared, rotation = linalg.eigh(mass_weighted)
    squared = _refine_softest(mass_weighted, squared)
    zero_modes = tuple(int(k) for k in np.flatnonzero(squared == 0.0))
    stable = bool(np.all(squared >= 0.0))
    frequencies = np.sqrt(np.clip(squared, 0.0, None))

    mode_vectors = None
    if stable and not zero_modes:
        # x = T^1/2 R W^-1/2 X,  p = T^-1/2 R W^1/2 P
        position = kinetic_root[:, np.newaxis] * rotation / np.sqrt(frequencies)[np.newaxis, :]
        momentum = rotation * np.sqrt(frequencies)[np.newaxis, :] / kinetic_root[:, np.newaxis]
        mode_vectors = linalg.block_diag(position, momentum)
        residual = symplectic_residual(mode_vectors)
        if residual > SYMPLECTIC_TOL:
            raise ContractError(
                f"normal-mode transformation is not symplectic (residual {residual:.2e})"
            )
    else:
        logger.debug(f"symplectic_diagonalize: stable={stable} zero_modes={zero_modes}")

    return SymplecticModes(
        frequencies=frequencies,
        squared_frequencies=squared,
        zero_modes=zero_modes,
        mode_vectors=mode_vectors,
        stable=stable,
    )


def extract_polariton_couplings(modes: SymplecticModes, g0: float,
                                phonon_mode: int = 0) -> Tuple[float, ...]:
    """
    Couplings g_k = g0 * |coefficient of (d_k + d_k') in (b + b')|, highest frequency first.

    For two modes this is (g_plus, g_minus).
    """
    if not modes.stable:
        raise PhaseError("unstable normal modes: couplings undefined")
    if modes.mode_vectors is None:
        raise CriticalPointError(
            f"zero mode(s) {list(modes.zero_modes)}: coupling diverges at the CP"
        )

    weights = np.abs(modes.mode_vectors[phonon_mode, : len(modes.frequencies)])
    return tuple(float(g0 * w) for w in weights[::-1])
