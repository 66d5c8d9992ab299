"""
Dense Hermitian eigensolving with contract checks.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Union

import numpy as np
from scipy import linalg

from config.logging_config import get_logger
from config.settings import get_settings
from core.errors import ContractError

logger = get_logger(__name__)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator matrix; Hamiltonians built here are real symmetric."""

    entries: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ContractError(f"operator matrix must be square, got shape {self.entries.shape}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermitian_deviation(self) -> float:
        """Max elementwise |H - H^dagger|."""
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def commutator(self, other: Union["OperatorMatrix", np.ndarray]) -> np.ndarray:
        other = other.entries if isinstance(other, OperatorMatrix) else other
        return self.entries @ other - other @ self.entries

    def commutes_with_diagonal(self, diagonal: np.ndarray) -> float:
        """Max elementwise |[H, D]| for D = diag(diagonal)."""
        commutator = self.entries * (diagonal[np.newaxis, :] - diagonal[:, np.newaxis])
        return float(np.max(np.abs(commutator), initial=0.0))


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    max_residual: float = 0.0

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    def gaps(self) -> np.ndarray:
        """Excitation energies E_k - E_0."""
        return self.eigenvalues[1:] - self.eigenvalues[0]

    def expectation(self, operator: np.ndarray, index: int = 0) -> float:
        vector = self.eigenvectors[:, index]
        return float(np.real(vector.conj() @ operator @ vector))


@dataclass(frozen=True)
class SectorSpectrum:
    """Spectrum of one symmetry block, with the basis indices it lives on."""

    label: float
    indices: np.ndarray
    result: SpectrumResult = field(repr=False)


def hermitian_eigensolve(matrix: Union[OperatorMatrix, np.ndarray],
                         hermitian_tol: Optional[float] = None,
                         residual_tol: Optional[float] = None) -> SpectrumResult:
    """
    Ascending eigenvalues and eigenvectors of a Hermitian matrix.

    Raises:
        ContractError: input deviates from Hermitian by more than ``hermitian_tol``
            or a residual ||Hv - lambda v|| exceeds ``residual_tol`` * ||H||
    """
    settings = get_settings()
    hermitian_tol = settings.hermitian_tol if hermitian_tol is None else hermitian_tol
    residual_tol = settings.residual_tol if residual_tol is None else residual_tol

    operator = matrix if isinstance(matrix, OperatorMatrix) else OperatorMatrix(np.asarray(matrix))
    deviation = operator.hermitian_deviation()
    if deviation > hermitian_tol:
        raise ContractError(f"matrix is not Hermitian: max |H - H^dagger| = {deviation:.3e}")

    entries = operator.entries
    eigenvalues, eigenvectors = linalg.eigh(entries)

    scale = max(float(np.max(np.abs(eigenvalues), initial=0.0)), 1.0)
    residuals = np.linalg.norm(entries @ eigenvectors - eigenvectors * eigenvalues, axis=0)
    max_residual = float(np.max(residuals, initial=0.0))
    if max_residual > residual_tol * scale:
        raise ContractError(f"eigen-residual {max_residual:.3e} exceeds {residual_tol:.1e} * ||H||")

    logger.debug(f"eigh dim={operator.dim} label={operator.label!r} "
                 f"max_residual={max_residual:.2e}")
    return SpectrumResult(eigenvalues=eigenvalues, eigenvectors=eigenvectors,
                          max_residual=max_residual)


def parity_resolved_spectrum(matrix: Union[OperatorMatrix, np.ndarray],
                             parity: np.ndarray) -> Dict[float, SectorSpectrum]:
    """
    Diagonalize each parity block separately.

    Args:
        matrix: Hamiltonian commuting with the diagonal parity operator
        parity: +1/-1 diagonal of the parity operator on the same basis

    Returns:
        {+1.0: SectorSpectrum, -1.0: SectorSpectrum}; eigenvectors are block-local
    """
    operator = matrix if isinstance(matrix, OperatorMatrix) else OperatorMatrix(np.asarray(matrix))
    leak = operator.commutes_with_diagonal(parity)
    if leak > get_settings().hermitian_tol:
        raise ContractError(f"Hamiltonian does not conserve parity: max |[H, P]| = {leak:.3e}")

    sectors: Dict[float, SectorSpectrum] = {}
    for label in (1.0, -1.0):
        indices = np.flatnonzero(parity == label)
        if indices.size == 0:
            continue
        block = operator.entries[np.ix_(indices, indices)]
        sectors[label] = SectorSpectrum(
            label=label,
            indices=indices,
            result=hermitian_eigensolve(
                OperatorMatrix(block, label=f"{operator.label}[P={label:+.0f}]")
            ),
        )
    return sectors
