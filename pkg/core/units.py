"""
Unit normalization. Internally every frequency and coupling is a ratio to omega_m.
"""

import math
from enum import Enum
from typing import Any, Dict, Mapping, Tuple, Union

from .errors import ConfigurationError, DomainError

# Keys holding a frequency or coupling; n_spins is a pure number
FREQUENCY_KEYS = (
    "omega_m",
    "omega_q",
    "g_single",
    "g_collective",
    "g0",
    "omega_a",
    "omega_minus",
    "g_minus",
)


class FrequencyUnit(str, Enum):
    OMEGA_M = "omega_m"
    HZ = "hz"
    RAD_S = "rad_s"


def to_angular(value: float, unit: FrequencyUnit) -> float:
    """Convert a value to angular units (Hz values are multiplied by 2*pi)."""
    if unit is FrequencyUnit.HZ:
        return 2.0 * math.pi * value
    return value


def normalize_values(values: Mapping[str, Any],
                     unit: Union[FrequencyUnit, str]) -> Tuple[Dict[str, Any], float]:
    """
    Express every frequency-like entry of ``values`` in units of omega_m.

    Args:
        values: raw parameter mapping; must contain ``omega_m``
        unit: tag naming the units the frequencies are given in

    Returns:
        (normalized mapping, reference omega_m in angular units of the input)
    """
    unit = FrequencyUnit(unit)
    if values.get("omega_m") is None:
        raise ConfigurationError("omega_m is required to normalize frequencies")

    reference = to_angular(float(values["omega_m"]), unit)
    if not reference > 0:
        raise DomainError(f"omega_m must be positive, got {values['omega_m']}")

    normalized: Dict[str, Any] = {}
    for key, value in values.items():
        if key in FREQUENCY_KEYS and value is not None:
            if unit is FrequencyUnit.OMEGA_M:
                normalized[key] = float(value) / float(values["omega_m"])
            else:
                normalized[key] = to_angular(float(value), unit) / reference
        else:
            normalized[key] = value

    if unit is FrequencyUnit.OMEGA_M:
        reference = float(values["omega_m"])
    return normalized, reference
