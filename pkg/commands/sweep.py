"""
sweep: figure presets and custom grids written to dataset files.
"""

from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError

from config.logging_config import get_logger
from config.run_config import RunConfig
from config.settings import get_settings
from core.errors import ConfigurationError, OracleToleranceError
from sweeps.engine import run_sweep
from sweeps.export import export
from sweeps.presets import PRESETS
from sweeps.spec import SweepResult, SweepSpec

from .base import Command

logger = get_logger(__name__)

CUSTOM = "custom"


def build_dataset(config: RunConfig) -> SweepResult:
    preset = config.preset or (CUSTOM if config.sweep else None)
    if preset is None:
        raise ConfigurationError(f"choose a preset ({', '.join(PRESETS)}) or give a sweep block")

    if preset == CUSTOM:
        if not config.sweep:
            raise ConfigurationError("custom sweep needs a 'sweep' block in the config file")
        try:
            spec = SweepSpec(**config.sweep)
        except ValidationError as e:
            raise ConfigurationError(f"invalid sweep block: {e}") from e
        if config.omega_floor is not None:
            spec = spec.model_copy(update={"omega_floor": config.omega_floor})
        return run_sweep(spec, config.workers)

    if preset not in PRESETS:
        available = ", ".join([*PRESETS, "custom"])
        raise ConfigurationError(f"unknown preset {preset!r}; available: {available}")
    kwargs: Dict[str, Any] = {"oracle_check": config.oracle_check, "workers": config.workers}
    if config.ratio is not None:
        kwargs["ratio_omega_q"] = config.ratio
    return PRESETS[preset](**kwargs)


class SweepCommand(Command):

    def get_name(self) -> str:
        return "sweep"

    def get_description(self) -> str:
        return "Write a figure preset (fig2, fig3) or a custom grid to CSV/JSON"

    def get_parameters(self):
        return [
            {"name": "preset", "type": "str", "positional": True,
             "choices": list(PRESETS) + [CUSTOM], "help": "dataset to generate"},
            {"name": "ratio", "type": "float", "help": "omega_q/omega_m of the preset"},
            {"name": "workers", "type": "int", "help": "thread pool size"},
            {"name": "oracle_check", "type": "bool", "help": "attach symplectic-oracle columns"},
        ]

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        result = build_dataset(config)
        name = config.preset or CUSTOM
        path = Path(config.out or Path(get_settings().output_dir) / f"{name}.{config.format}")

        written = export(result, config.format, path)
        report["path"] = str(written)
        report["format"] = config.format
        report["rows"] = len(result.rows)
        report["invalid_rows"] = result.invalid_count
        reasons: Dict[str, int] = {}
        for row in result.rows:
            if not row.get("valid", True):
                reasons[row["reason"]] = reasons.get(row["reason"], 0) + 1
        for reason, count in sorted(reasons.items()):
            report[f"invalid.{reason.replace(' ', '_')}"] = count

        max_delta = result.max_oracle_delta()
        if max_delta is not None:
            tolerance = config.tol or get_settings().oracle_tol
            report["max_oracle_delta"] = max_delta
            logger.oracle_comparison(f"sweep:{name}", max_delta, tolerance, rows=len(result.rows))
            if max_delta > tolerance:
                raise OracleToleranceError(
                    f"sweep oracle delta {max_delta:.3e} exceeds tolerance {tolerance:.1e}"
                )
        return None
