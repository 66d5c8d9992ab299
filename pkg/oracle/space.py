"""
Truncated Hilbert spaces: boson Fock factors (cutoff n_max, dimension n_max+1) and an
optional collective-spin factor of magnitude j (dimension 2j+1), in that tensor order.

Operators are built on request and returned as dense arrays; nothing is cached.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence, Tuple

import numpy as np

from config.logging_config import get_logger
from config.settings import get_settings
from core.errors import ConfigurationError, DomainError, ResourceError

logger = get_logger(__name__)


def annihilation(dimension: int) -> np.ndarray:
    """Dense annihilation operator on a Fock space of the given dimension."""
    return np.diag(np.sqrt(np.arange(1, dimension, dtype=float)), 1)


def spin_lowering(j: float) -> np.ndarray:
    """J_- in the basis m = -j, ..., j (index k = m + j)."""
    m = np.arange(int(round(2 * j))) - j
    return np.diag(np.sqrt((j - m) * (j + m + 1)), 1)


def spin_z(j: float) -> np.ndarray:
    return np.diag(np.arange(int(round(2 * j)) + 1) - j)


@dataclass(frozen=True)
class TruncatedSpace:
    boson_cutoffs: Tuple[int, ...]
    spin_j: Optional[float] = None

    @property
    def factor_dims(self) -> Tuple[int, ...]:
        dims = tuple(n + 1 for n in self.boson_cutoffs)
        if self.spin_j is not None:
            dims += (int(round(2 * self.spin_j)) + 1,)
        return dims

    @property
    def dim(self) -> int:
        return int(np.prod(self.factor_dims))

    @property
    def n_modes(self) -> int:
        return len(self.boson_cutoffs)

    @property
    def has_spin(self) -> bool:
        return self.spin_j is not None

    def _embed(self, local: np.ndarray, factor: int) -> np.ndarray:
        factors = [np.eye(d) for d in self.factor_dims]
        factors[factor] = local
        return reduce(np.kron, factors)

    def _check_mode(self, mode: int):
        if not 0 <= mode < self.n_modes:
            raise ConfigurationError(f"boson mode {mode} not in space with {self.n_modes} modes")

    def _spin_factor(self) -> int:
        if not self.has_spin:
            raise ConfigurationError("space has no spin sector")
        return self.n_modes

    def identity(self) -> np.ndarray:
        return np.eye(self.dim)

    def annihilation(self, mode: int = 0) -> np.ndarray:
        self._check_mode(mode)
        return self._embed(annihilation(self.factor_dims[mode]), mode)

    def creation(self, mode: int = 0) -> np.ndarray:
        return self.annihilation(mode).T

    def number(self, mode: int = 0) -> np.ndarray:
        self._check_mode(mode)
        return self._embed(np.diag(np.arange(self.factor_dims[mode], dtype=float)), mode)

    def position_sum(self, mode: int = 0) -> np.ndarray:
        """a + a^dagger."""
        self._check_mode(mode)
        local = annihilation(self.factor_dims[mode])
        return self._embed(local + local.T, mode)

    def spin_z(self) -> np.ndarray:
        factor = self._spin_factor()
        return self._embed(spin_z(self.spin_j), factor)

    def spin_minus(self) -> np.ndarray:
        factor = self._spin_factor()
        return self._embed(spin_lowering(self.spin_j), factor)

    def spin_plus(self) -> np.ndarray:
        return self.spin_minus().T

    def spin_x(self) -> np.ndarray:
        factor = self._spin_factor()
        lowering = spin_lowering(self.spin_j)
        return self._embed((lowering + lowering.T) / 2.0, factor)

    def parity_diagonal(self) -> np.ndarray:
        """Eigenvalues (+1/-1) of exp[i pi (sum_i n_i + J_z + j)] on the product basis."""
        occupation = np.zeros(self.dim, dtype=int)
        for factor, d in enumerate(self.factor_dims):
            local = np.arange(d)
            occupation = occupation + np.diag(self._embed(np.diag(local), factor)).astype(int)
        return np.where(occupation % 2 == 0, 1.0, -1.0)

    def parity(self) -> np.ndarray:
        return np.diag(self.parity_diagonal())


def build_space(cutoffs: Sequence[int], j: Optional[float] = None,
                dimension_cap: Optional[int] = None) -> TruncatedSpace:
    """
    Validate and build a truncated space.

    Args:
        cutoffs: per-mode Fock cutoffs n_max (each >= 1)
        j: collective spin magnitude N/2 (multiple of 1/2), or None
        dimension_cap: largest admissible total dimension (settings default)
    """
    cutoffs = tuple(int(n) for n in cutoffs)
    if any(n < 1 for n in cutoffs):
        raise DomainError(f"Fock cutoffs must be >= 1, got {list(cutoffs)}")
    if j is not None:
        if j <= 0 or abs(2 * j - round(2 * j)) > 1e-12:
            raise DomainError(f"spin magnitude must be a positive multiple of 1/2, got {j}")
        j = round(2 * j) / 2.0

    space = TruncatedSpace(boson_cutoffs=cutoffs, spin_j=j)
    cap = dimension_cap if dimension_cap is not None else get_settings().dimension_cap
    if space.dim > cap:
        raise ResourceError(f"space dimension {space.dim} exceeds cap {cap}")

    logger.debug(f"Built truncated space cutoffs={list(cutoffs)} j={j} dim={space.dim}")
    return space
