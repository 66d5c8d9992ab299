"""
spectrum: polariton frequencies, mixing angle and the quadratic coefficients.
"""

from typing import Any, Dict, Optional

from config.run_config import RunConfig
from core.criticality import PHASE_NORMAL, closed_form_coefficients, phase_label

from .base import Command, resolve_point


class SpectrumCommand(Command):

    def get_name(self) -> str:
        return "spectrum"

    def get_description(self) -> str:
        return "UBP/LBP frequencies, mixing angle, stability and quadratic coefficients"

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        point = resolve_point(config, continue_below_threshold=True)
        phase = phase_label(point.G, point.g_crit)
        spectrum = point.spectrum

        report["G_over_omega_m"] = point.G
        report["g_crit_over_omega_m"] = point.g_crit
        report["mu"] = point.mu
        report["phase"] = phase
        report["omega_plus_over_omega_m"] = spectrum.omega_plus
        report["omega_minus_sq_over_omega_m_sq"] = spectrum.omega_minus_sq
        report["omega_minus_over_omega_m"] = spectrum.omega_minus
        report["theta"] = spectrum.theta
        report["stable"] = spectrum.stable

        model = closed_form_coefficients(point.params.omega_q, point.G, point.mu,
                                         omega_m=point.params.omega_m,
                                         continue_below_threshold=True)
        report["Omega_q"] = model.Omega_q
        report["G_eff"] = model.G_eff
        report["eta"] = model.eta

        if phase == PHASE_NORMAL:
            return "normal phase: superradiant-frame spectrum continued below threshold"
        return None
