"""
critical-point: G_c, mu, phase and the spin number needed to reach G_c.
"""

import math
from typing import Any, Dict, Optional

from config.logging_config import get_logger
from config.run_config import RunConfig
from core.criticality import critical_coupling, phase_label, required_spin_number
from core.units import FrequencyUnit

from .base import Command, resolve_point

logger = get_logger(__name__)


class CriticalPointCommand(Command):
    """Locate the superradiant critical point for the given frequencies."""

    def get_name(self) -> str:
        return "critical-point"

    def get_description(self) -> str:
        return "Critical coupling G_c, critical parameter mu and phase label"

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        params, _ = config.system_params()
        normalized, _ = config.normalized()
        omega_m_input = float(config.raw_values()["omega_m"])
        g_crit = critical_coupling(params.omega_m, params.omega_q)

        report["g_crit_over_omega_m"] = g_crit
        if config.unit is not FrequencyUnit.OMEGA_M:
            report["g_crit"] = g_crit * omega_m_input

        G = params.g_collective
        if G is None and normalized.get("omega_minus") is not None:
            # operating point fixed by omega_- instead
            G = resolve_point(config).G

        if G is not None:
            report["G_over_omega_m"] = G
            report["mu"] = (g_crit / G) ** 2 if G > 0 else math.inf
            report["phase"] = phase_label(G, g_crit)
        else:
            report["phase"] = "unknown"

        if params.g_single is not None:
            report["n_required"] = required_spin_number(g_crit, params.g_single)
            if G is not None and params.n_spins is None:
                report["n_spins_at_G"] = (G / params.g_single) ** 2

        logger.info(f"critical point: G_c/omega_m={g_crit:.12g} phase={report['phase']}")
        return None
