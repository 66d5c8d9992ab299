"""
oracle: closed-form results against brute-force numerics.

    spectrum   analytic omega_+- vs symplectic diagonalization of the quadratic form
    couplings  analytic g_+- vs normal-mode extraction
    kerr       chi = g-^2/omega- vs a fit to exact photon-number sector spectra
    dicke      finite-N Dicke spectrum vs its exact bosonization (plus N -> inf targets)

Exit code 5 when the largest delta exceeds the tolerance.
"""

from typing import Any, Callable, Dict, Optional

import numpy as np

from config.logging_config import get_logger
from config.run_config import RunConfig
from config.settings import get_settings
from core.criticality import (
    PHASE_SUPERRADIANT,
    closed_form_coefficients,
    kerr_coefficient,
    optomech_couplings,
)
from core.errors import ConfigurationError, CriticalPointError, OracleToleranceError
from oracle.eigensolve import hermitian_eigensolve
from oracle.hamiltonians import bosonized_dicke_hamiltonian, dicke_hamiltonian
from oracle.kerr import fit_kerr
from oracle.space import build_space
from oracle.symplectic import (
    extract_polariton_couplings,
    quadratic_form_from_model,
    symplectic_diagonalize,
)
from sweeps.convergence import dicke_point, thermodynamic_targets

from .base import Command, ResolvedPoint, resolve_point
from .kerr import lower_branch_coupling

logger = get_logger(__name__)

DEFAULT_KERR_CUTOFF = 40
DEFAULT_DICKE_CUTOFF = 40
DICKE_LEVELS = 8


def _relative(analytic: float, oracle: float) -> float:
    return abs(analytic - oracle) / abs(analytic)


def _stable_point(config: RunConfig) -> ResolvedPoint:
    point = resolve_point(config)
    omega_floor = config.omega_floor or get_settings().omega_floor
    if not point.spectrum.omega_minus or point.spectrum.omega_minus <= omega_floor:
        raise CriticalPointError("omega_- at the CP floor: zero mode, nothing to compare")
    return point


def _symplectic_modes(point: ResolvedPoint):
    model = closed_form_coefficients(point.params.omega_q, point.G, point.mu,
                                     omega_m=point.params.omega_m)
    return symplectic_diagonalize(quadratic_form_from_model(model))


def check_spectrum(config: RunConfig, report: Dict[str, Any]) -> float:
    point = _stable_point(config)
    modes = _symplectic_modes(point)
    pairs = {
        "omega_minus": (point.spectrum.omega_minus, float(modes.frequencies[0])),
        "omega_plus": (point.spectrum.omega_plus, float(modes.frequencies[1])),
    }
    report["mu"] = point.mu
    return _tabulate(pairs, report)


def check_couplings(config: RunConfig, report: Dict[str, Any]) -> float:
    point = _stable_point(config)
    omega_floor = config.omega_floor or get_settings().omega_floor
    analytic = optomech_couplings(1.0, point.params.omega_m, point.spectrum, omega_floor)
    g_plus, g_minus = extract_polariton_couplings(_symplectic_modes(point), g0=1.0)
    pairs = {
        "g_plus_over_g0": (analytic.g_plus, g_plus),
        "g_minus_over_g0": (analytic.g_minus, g_minus),
    }
    report["mu"] = point.mu
    return _tabulate(pairs, report)


def check_kerr(config: RunConfig, report: Dict[str, Any]) -> float:
    omega_a, omega_minus, g_minus = lower_branch_coupling(config)
    photon_numbers = list(range(config.n_photon_max + 1))
    fit = fit_kerr(omega_a, omega_minus, g_minus, photon_numbers=photon_numbers,
                   n_max=config.n_max or DEFAULT_KERR_CUTOFF)

    report["g_minus_over_omega_minus"] = g_minus / omega_minus
    max_delta = _tabulate({"chi": (kerr_coefficient(g_minus, omega_minus), fit.chi)}, report)
    # omega_a may be zero: compare on the omega_- scale
    omega_a_delta = abs(fit.omega_a - omega_a) / max(abs(omega_a), omega_minus)
    report["analytic_omega_a"] = omega_a
    report["oracle_omega_a"] = fit.omega_a
    report["delta_omega_a"] = omega_a_delta
    return max(max_delta, omega_a_delta)


def check_dicke(config: RunConfig, report: Dict[str, Any]) -> float:
    params, _ = config.system_params()
    if params.n_spins is None or params.g_collective is None:
        raise ConfigurationError("dicke check needs n_spins and the collective coupling")
    n_spins, G = params.n_spins, params.g_collective
    n_max = config.n_max or DEFAULT_DICKE_CUTOFF
    cap = config.dimension_cap or get_settings().dimension_cap

    dicke_space = build_space([n_max], j=n_spins / 2.0, dimension_cap=cap)
    hp_space = build_space([n_max, n_spins], dimension_cap=cap)
    dicke = hermitian_eigensolve(dicke_hamiltonian(dicke_space, params.omega_m, params.omega_q, G))
    bosonized = hermitian_eigensolve(
        bosonized_dicke_hamiltonian(hp_space, params.omega_m, params.omega_q, G, n_spins)
    )

    levels = min(DICKE_LEVELS, dicke_space.dim)
    shift = params.omega_q * n_spins / 2.0
    difference = np.abs(dicke.eigenvalues[:levels] - (bosonized.eigenvalues[:levels] - shift))
    max_delta = float(np.max(difference)) / max(abs(dicke.ground_energy), params.omega_m)

    report["N"] = n_spins
    report["n_max"] = n_max
    report["dim"] = dicke_space.dim
    report["levels_compared"] = levels
    report["dicke_ground_energy"] = dicke.ground_energy
    report["bosonized_ground_energy"] = bosonized.ground_energy - shift
    report["max_delta"] = max_delta

    # finite-N observables next to their thermodynamic limits; informational only
    targets = thermodynamic_targets(params.omega_m, params.omega_q, G)
    observed = dicke_point(n_spins, params.omega_m, params.omega_q, G, n_max,
                           targets["phase"] == PHASE_SUPERRADIANT, cap)
    report["phase"] = targets["phase"]
    report["energy_per_spin"] = observed["energy_per_spin"]
    report["energy_per_spin_target"] = targets["energy_per_spin"]
    report["jz_over_j"] = observed["jz_over_j"]
    report["jz_target"] = targets["jz"]
    report["gap"] = observed["gap"]
    report["gap_target"] = targets["gap"]
    return max_delta


def _tabulate(pairs: Dict[str, tuple], report: Dict[str, Any]) -> float:
    max_delta = 0.0
    for key, (analytic, oracle) in pairs.items():
        delta = _relative(analytic, oracle)
        report[f"analytic_{key}"] = analytic
        report[f"oracle_{key}"] = oracle
        report[f"delta_{key}"] = delta
        max_delta = max(max_delta, delta)
    report["max_delta"] = max_delta
    return max_delta


CHECKS: Dict[str, Callable[[RunConfig, Dict[str, Any]], float]] = {
    "spectrum": check_spectrum,
    "couplings": check_couplings,
    "kerr": check_kerr,
    "dicke": check_dicke,
}


def default_tolerance(which: str) -> float:
    settings = get_settings()
    return settings.analytic_tol if which in ("spectrum", "couplings") else settings.oracle_tol


class OracleCommand(Command):
    """CI gate: every analytic result against its brute-force counterpart."""

    def get_name(self) -> str:
        return "oracle"

    def get_description(self) -> str:
        return "Compare closed-form results with brute-force numerics (exit 5 on breach)"

    def get_parameters(self):
        return [
            {"name": "which", "type": "str", "positional": True, "choices": list(CHECKS),
             "help": "comparison to run"},
            {"name": "n_photon_max", "type": "int",
             "help": "largest photon number in the Kerr fit"},
            {"name": "n_max", "type": "int", "help": "Fock cutoff of the dense oracle"},
        ]

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        which = config.which
        tolerance = config.tol or default_tolerance(which)
        report["which"] = which
        report["tolerance"] = tolerance

        max_delta = CHECKS[which](config, report)
        report["max_delta"] = max_delta
        report["passed"] = max_delta <= tolerance
        logger.oracle_comparison(which, max_delta, tolerance)

        if max_delta > tolerance:
            raise OracleToleranceError(
                f"{which}: max delta {max_delta:.3e} exceeds tolerance {tolerance:.1e}"
            )
        return None
