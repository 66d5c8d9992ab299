"""
converge: finite-N Dicke exact diagonalization approaching the N -> inf limit.
"""

from pathlib import Path
from typing import Any, Dict, Optional

from config.run_config import RunConfig
from config.settings import get_settings
from core.errors import ConfigurationError, OracleToleranceError
from sweeps.convergence import dicke_convergence_study, is_converging
from sweeps.export import export

from .base import Command

DEFAULT_CUTOFF = 70
REPORTED_COLUMNS = ("dim", "energy_per_spin", "jz_over_j", "jz_error", "gap", "gap_error")


class ConvergeCommand(Command):

    def get_name(self) -> str:
        return "converge"

    def get_description(self) -> str:
        return "Dicke ground state at growing N against the thermodynamic-limit targets"

    def get_parameters(self):
        return [
            {"name": "N_list", "type": "int_list", "help": "ascending spin numbers"},
            {"name": "n_max", "type": "int", "help": "phonon Fock cutoff"},
        ]

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        params, _ = config.system_params()
        if params.g_collective is None:
            raise ConfigurationError("converge needs the collective coupling G")
        n_max = config.n_max or DEFAULT_CUTOFF

        result = dicke_convergence_study(params.omega_q, params.g_collective, config.N_list,
                                         n_max, omega_m=params.omega_m,
                                         dimension_cap=config.dimension_cap)
        first = result.rows[0]
        report["phase"] = first["phase"]
        report["energy_per_spin_target"] = first["energy_per_spin_target"]
        report["jz_target"] = first["jz_target"]
        report["gap_target"] = first["gap_target"]
        for row in result.rows:
            for key in REPORTED_COLUMNS:
                report[f"N{row['N']}.{key}"] = row[key]

        if config.out:
            report["path"] = str(export(result, config.format, Path(config.out)))

        tolerance = config.tol or get_settings().dicke_tol
        converging = is_converging(result, tolerance)
        report["converging"] = converging
        if not converging:
            raise OracleToleranceError(
                f"no convergence: <J_z>/j error not decreasing "
                f"or last gap error above {tolerance:g}"
            )
        return None
