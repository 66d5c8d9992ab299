"""
enhance: cavity couplings to the polaritons, Kerr coefficient and cooperativity gain.
"""

from typing import Any, Dict, Optional

from config.logging_config import get_logger
from config.run_config import RunConfig
from config.settings import get_settings
from core.criticality import PHASE_NORMAL, optomech_couplings, phase_label
from core.errors import DomainError, PhaseError
from core.units import FrequencyUnit

from .base import Command, resolve_point

logger = get_logger(__name__)


class EnhanceCommand(Command):
    """Criticality-enhanced single-photon coupling on the superradiant side."""

    def get_name(self) -> str:
        return "enhance"

    def get_description(self) -> str:
        return "Enhanced couplings g+/g0, g-/g0, Kerr chi and cooperativity ratio"

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        omega_floor = config.omega_floor or get_settings().omega_floor
        point = resolve_point(config, continue_below_threshold=True)
        if phase_label(point.G, point.g_crit) == PHASE_NORMAL:
            raise PhaseError("normal phase (G < G_c): superradiant-frame couplings invalid; "
                             "use the oracle path")

        spectrum = point.spectrum
        report["mu"] = point.mu
        report["omega_plus_over_omega_m"] = spectrum.omega_plus
        report["omega_minus_over_omega_m"] = spectrum.omega_minus
        report["theta"] = spectrum.theta

        g0 = point.params.g0
        if not g0 > 0:
            raise DomainError(f"g0 must be positive to report ratios, got {g0}")
        couplings = optomech_couplings(g0, point.params.omega_m, spectrum, omega_floor)
        report["g_plus_over_g0"] = couplings.g_plus / g0
        report["g_minus_over_g0"] = couplings.g_minus / g0
        report["coop_ratio"] = couplings.coop_ratio
        report["chi_over_omega_m"] = couplings.chi
        if config.unit is not FrequencyUnit.OMEGA_M:
            # back in the input units
            report["g_minus"] = couplings.g_minus * point.omega_m_input
            report["chi"] = couplings.chi * point.omega_m_input
        report["chi_sign_note"] = couplings.chi_sign_note

        logger.info(f"enhance: g-/g0={report['g_minus_over_g0']:.6g} "
                    f"coop_ratio={couplings.coop_ratio:.6g}")
        return None
