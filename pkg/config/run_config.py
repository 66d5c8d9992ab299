"""
Run configuration: one flat record per invocation, resolved from
defaults < profile < YAML config file < command-line flags.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from core.errors import ConfigurationError, OutputError
from core.models import SystemParams, normalize_inputs
from core.units import FrequencyUnit, normalize_values

from .logging_config import get_logger
from .profiles import ProfileRegistry

logger = get_logger(__name__)

COMMANDS = ("critical-point", "spectrum", "enhance", "kerr", "sweep", "oracle", "converge")
ORACLE_CHECKS = ("spectrum", "couplings", "kerr", "dicke")


class RunConfig(BaseModel):
    """Every knob of a run; frequencies are in ``unit`` until normalized."""

    model_config = ConfigDict(extra="forbid")

    command: Literal[COMMANDS]
    profile: Optional[str] = None
    unit: FrequencyUnit = FrequencyUnit.OMEGA_M

    # SystemParams fields plus the LBP frequency used by enhance/kerr
    omega_m: Optional[float] = None
    omega_q: Optional[float] = None
    g_single: Optional[float] = None
    n_spins: Optional[int] = None
    g_collective: Optional[float] = None
    g0: Optional[float] = None
    omega_a: Optional[float] = None
    omega_minus: Optional[float] = None
    g_minus: Optional[float] = None

    # command-specific
    which: Literal[ORACLE_CHECKS] = "spectrum"
    preset: Optional[str] = None
    ratio: Optional[float] = None
    n_photon_max: int = Field(default=3, ge=0)
    n_max: Optional[int] = Field(default=None, ge=1)
    N_list: List[int] = Field(default_factory=lambda: [8, 16, 24])
    oracle_check: bool = False
    workers: Optional[int] = Field(default=None, ge=1)
    sweep: Optional[Dict[str, Any]] = None

    # output
    out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"

    # tolerance overrides
    tol: Optional[float] = Field(default=None, gt=0)
    omega_floor: Optional[float] = Field(default=None, gt=0)
    dimension_cap: Optional[int] = Field(default=None, gt=0)

    def raw_values(self) -> Dict[str, Any]:
        """Physical inputs as given; omega_m defaults to 1 for dimensionless runs."""
        keys = list(SystemParams.model_fields) + ["omega_minus", "g_minus"]
        values = {key: getattr(self, key) for key in keys if getattr(self, key) is not None}
        if self.unit is FrequencyUnit.OMEGA_M:
            values.setdefault("omega_m", 1.0)
        return values

    def normalized(self) -> Tuple[Dict[str, Any], float]:
        """(values in omega_m units, reference omega_m in input units)."""
        return normalize_values(self.raw_values(), self.unit)

    def system_params(self) -> Tuple[SystemParams, float]:
        return normalize_inputs(self.raw_values(), self.unit)

    def echo(self) -> Dict[str, Any]:
        """Resolved config, unset fields dropped, for config.<key>=<value> lines."""
        return self.model_dump(mode="json", exclude_none=True)


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a flat YAML mapping."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise OutputError(f"cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigurationError(f"config file {path} is not valid YAML: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file {path} must hold a key/value mapping")
    return {str(key).replace("-", "_"): value for key, value in data.items()}


def resolve_run_config(command: str, flags: Optional[Mapping[str, Any]] = None,
                       config_path: Optional[Union[str, Path]] = None,
                       registry: Optional[ProfileRegistry] = None) -> RunConfig:
    """
    Merge the configuration layers. Flags set to None count as not given.

    Raises:
        ConfigurationError: unknown profile, unknown key or invalid value
    """
    flags = {key: value for key, value in (flags or {}).items() if value is not None}
    file_values = load_config_file(config_path) if config_path else {}

    merged: Dict[str, Any] = {}
    profile_name = flags.get("profile", file_values.get("profile"))
    if profile_name:
        profile = (registry or ProfileRegistry()).get(profile_name)
        merged["unit"] = profile.unit
        merged.update(profile.values)
        logger.debug(f"Applied profile {profile_name}: {sorted(profile.values)}")

    merged.update(file_values)
    merged.update(flags)
    merged["command"] = command

    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {e}") from e
