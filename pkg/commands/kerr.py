"""
kerr: photon-photon nonlinearity generated by the cavity-LBP coupling.
"""

from typing import Any, Dict, Optional, Tuple

from config.run_config import RunConfig
from config.settings import get_settings
from core.criticality import kerr_coefficient, optomech_couplings
from core.models import KERR_SIGN_NOTE

from .base import Command, resolve_point


def lower_branch_coupling(config: RunConfig) -> Tuple[float, float, float]:
    """(omega_a, omega_-, g_-) in omega_m units, given directly or from the operating point."""
    normalized, _ = config.normalized()
    omega_a = normalized.get("omega_a", 0.0)
    if normalized.get("g_minus") is not None and normalized.get("omega_minus") is not None:
        return omega_a, normalized["omega_minus"], normalized["g_minus"]

    point = resolve_point(config)
    omega_floor = config.omega_floor or get_settings().omega_floor
    couplings = optomech_couplings(point.params.g0, point.params.omega_m, point.spectrum,
                                   omega_floor)
    return omega_a, point.spectrum.omega_minus, couplings.g_minus


class KerrCommand(Command):

    def get_name(self) -> str:
        return "kerr"

    def get_description(self) -> str:
        return "Kerr coefficient chi = g-^2/omega- and sector energies E(n) = omega_a n - chi n^2"

    def get_parameters(self):
        return [
            {"name": "n_photon_max", "type": "int", "help": "largest photon number reported"},
        ]

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        omega_a, omega_minus, g_minus = lower_branch_coupling(config)
        chi = kerr_coefficient(g_minus, omega_minus)

        report["omega_minus_over_omega_m"] = omega_minus
        report["g_minus_over_omega_m"] = g_minus
        report["chi_over_omega_m"] = chi
        for n in range(config.n_photon_max + 1):
            report[f"energy_n{n}"] = omega_a * n - chi * n * n
        report["chi_sign_note"] = KERR_SIGN_NOTE
        return None
