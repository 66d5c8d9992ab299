"""
Finite-N Dicke exact diagonalization against the thermodynamic-limit targets of
the closed-form chain.
"""

import math
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config.logging_config import get_logger
from config.settings import get_settings
from core.criticality import (
    PHASE_SUPERRADIANT,
    critical_coupling,
    mean_field_energy_per_spin,
    phase_label,
    polariton_frequencies,
)
from core.errors import DomainError
from oracle.eigensolve import parity_resolved_spectrum
from oracle.hamiltonians import dicke_hamiltonian
from oracle.space import build_space
from oracle.symplectic import QuadraticForm, symplectic_diagonalize

from .engine import make_provenance
from .spec import SweepResult

logger = get_logger(__name__)

CONVERGENCE_COLUMNS = [
    "N",
    "n_max",
    "dim",
    "phase",
    "energy_per_spin",
    "energy_per_spin_target",
    "jz_over_j",
    "jz_target",
    "jz_error",
    "gap",
    "gap_target",
    "gap_error",
    "ground_parity",
    "truncation_delta",
]


def thermodynamic_targets(omega_m: float, omega_q: float, G: float) -> Dict[str, Any]:
    """(E/N, <J_z>/j, lowest excitation) in the N -> infinity limit."""
    g_crit = critical_coupling(omega_m, omega_q)
    phase = phase_label(G, g_crit)
    if G == 0:
        return {"phase": phase, "energy_per_spin": -omega_q / 2.0, "jz": -1.0,
                "gap": min(omega_m, omega_q)}

    mu = (g_crit / G) ** 2
    if phase == PHASE_SUPERRADIANT:
        gap = polariton_frequencies(omega_m, omega_q, G, mu).omega_minus
        jz = -mu
    else:
        # Normal phase: bare modes coupled by G (b + b')(c + c')
        form = QuadraticForm(np.array([omega_m, omega_q]),
                             np.array([[0.0, G], [G, 0.0]]), np.zeros(2))
        gap = float(symplectic_diagonalize(form).frequencies[0])
        jz = -1.0
    return {
        "phase": phase,
        "energy_per_spin": mean_field_energy_per_spin(omega_q, mu),
        "jz": jz,
        "gap": gap,
    }


def dicke_point(n_spins: int, omega_m: float, omega_q: float, G: float, n_max: int,
                superradiant: bool, dimension_cap: Optional[int] = None) -> Dict[str, Any]:
    """Parity-resolved ground-state observables at one N."""
    j = n_spins / 2.0
    space = build_space([n_max], j=j, dimension_cap=dimension_cap)
    sectors = parity_resolved_spectrum(dicke_hamiltonian(space, omega_m, omega_q, G),
                                       space.parity_diagonal())

    ground = min(sectors.values(), key=lambda sector: sector.result.ground_energy)
    vector = ground.result.eigenvectors[:, 0]
    spin_z = np.diag(space.spin_z())[ground.indices]
    jz = float(vector @ (spin_z * vector))

    if superradiant:
        # skip the tunnelling partner in the other parity sector
        gap = float(ground.result.eigenvalues[1] - ground.result.eigenvalues[0])
    else:
        levels = np.sort(np.concatenate([s.result.eigenvalues[:2] for s in sectors.values()]))
        gap = float(levels[1] - levels[0])

    return {
        "N": n_spins,
        "n_max": n_max,
        "dim": space.dim,
        "ground_energy": ground.result.ground_energy,
        "energy_per_spin": ground.result.ground_energy / n_spins,
        "jz_over_j": jz / j,
        "gap": gap,
        "ground_parity": int(ground.label),
    }


def dicke_convergence_study(omega_q: float, G: float, N_list: Sequence[int], n_max: int,
                            omega_m: float = 1.0, check_truncation: bool = False,
                            dimension_cap: Optional[int] = None) -> SweepResult:
    """
    One row per N: ground energy per spin, <J_z>/j and the first excitation gap,
    next to their thermodynamic-limit targets.

    With ``check_truncation`` every N is repeated at 2*n_max and the relative
    ground-energy change is reported.
    """
    N_list = [int(n) for n in N_list]
    if not N_list or any(n < 1 for n in N_list):
        raise DomainError(f"N_list must hold positive spin numbers, got {N_list}")
    if N_list != sorted(N_list):
        raise DomainError(f"N_list must be ascending, got {N_list}")

    cap = dimension_cap if dimension_cap is not None else get_settings().dimension_cap
    # fail before any diagonalization
    top_cutoff = 2 * n_max if check_truncation else n_max
    for n_spins in N_list:
        build_space([top_cutoff], j=n_spins / 2.0, dimension_cap=cap)

    targets = thermodynamic_targets(omega_m, omega_q, G)
    superradiant = targets["phase"] == PHASE_SUPERRADIANT

    rows: List[Dict[str, Any]] = []
    for n_spins in N_list:
        point = dicke_point(n_spins, omega_m, omega_q, G, n_max, superradiant, cap)
        truncation_delta = None
        if check_truncation:
            doubled = dicke_point(n_spins, omega_m, omega_q, G, 2 * n_max, superradiant, cap)
            truncation_delta = (abs(doubled["ground_energy"] - point["ground_energy"])
                                / max(abs(point["ground_energy"]), omega_m))

        row = {
            "phase": targets["phase"],
            "energy_per_spin_target": targets["energy_per_spin"],
            "jz_target": targets["jz"],
            "jz_error": abs(point["jz_over_j"] - targets["jz"]),
            "gap_target": targets["gap"],
            "gap_error": abs(point["gap"] - targets["gap"]),
            "truncation_delta": truncation_delta,
            **point,
        }
        rows.append({key: row.get(key) for key in CONVERGENCE_COLUMNS})
        logger.debug(f"Dicke N={n_spins}: jz/j={point['jz_over_j']:.6f} gap={point['gap']:.6f}")

    logger.sweep_operation("dicke_convergence_study", rows=len(rows))
    return SweepResult(
        spec_echo={
            "study": "dicke_convergence",
            "omega_m": omega_m,
            "omega_q": omega_q,
            "G": G,
            "N_list": N_list,
            "n_max": n_max,
            "check_truncation": check_truncation,
        },
        columns=CONVERGENCE_COLUMNS,
        rows=rows,
        provenance=make_provenance(),
    )


def is_converging(result: SweepResult, tolerance: float) -> bool:
    """<J_z>/j error non-increasing along N and the last gap within ``tolerance``."""
    errors = result.column("jz_error")
    monotone = all(later <= earlier + 1e-12 for earlier, later in zip(errors, errors[1:]))
    last_gap_error = result.rows[-1]["gap_error"] if result.rows else math.inf
    return monotone and last_gap_error <= tolerance
