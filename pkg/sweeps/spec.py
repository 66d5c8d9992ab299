"""
Sweep specifications and results.
"""

from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Axis parameters. Frequencies are in units of omega_m, couplings g0 in omega_m units too.
AXIS_NAMES = (
    "G_over_omega_m",
    "mu",
    "omega_m_over_omega_minus",
    "gc_minus_g_over_omega_m",
    "ratio_omega_q",
    "g0",
)

# Axes that fix the operating point on the lower branch; at most one per sweep
POINT_AXES = AXIS_NAMES[:4]

FIXED_KEYS = ("ratio_omega_q", "g0", "omega_m") + POINT_AXES

OUTPUT_KEYS = (
    "G_over_omega_m",
    "mu",
    "omega_m_over_omega_minus",
    "theta",
    "stable",
    "omega_minus_sq_over_omega_m_sq",
    "omega_minus_over_omega_m",
    "omega_plus_over_omega_m",
    "g_minus_over_g0",
    "g_plus_over_g0",
    "chi",
    "coop_ratio",
)

OUTPUT_ALIASES = {
    "omega_minus": "omega_minus_over_omega_m",
    "omega_plus": "omega_plus_over_omega_m",
}

# Outputs that diverge at the CP; requesting any of them invalidates rows within the floor
COUPLING_OUTPUTS = ("g_minus_over_g0", "g_plus_over_g0", "chi", "coop_ratio")

# Outputs with an oracle counterpart
ORACLE_OUTPUTS = (
    "omega_minus_over_omega_m",
    "omega_plus_over_omega_m",
    "g_minus_over_g0",
    "g_plus_over_g0",
)

DEFAULT_OUTPUTS = ["mu", "omega_minus_over_omega_m", "omega_plus_over_omega_m", "g_minus_over_g0",
                   "g_plus_over_g0", "chi", "coop_ratio"]


class AxisSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    start: float
    stop: float
    count: int = Field(ge=2)
    spacing: Literal["linear", "log"] = "linear"

    @field_validator("name")
    @classmethod
    def _known_axis(cls, value: str) -> str:
        if value not in AXIS_NAMES:
            raise ValueError(f"unknown axis {value!r}; expected one of {', '.join(AXIS_NAMES)}")
        return value

    @model_validator(mode="after")
    def _log_needs_positive(self) -> "AxisSpec":
        if self.spacing == "log" and not (self.start > 0 and self.stop > 0):
            raise ValueError(f"log axis {self.name} needs positive bounds")
        return self

    def values(self) -> List[float]:
        if self.spacing == "log":
            grid = np.geomspace(self.start, self.stop, self.count)
        else:
            grid = np.linspace(self.start, self.stop, self.count)
        return [float(v) for v in grid]


class SweepSpec(BaseModel):
    """One- or two-axis sweep over the closed-form chain."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "custom"
    axes: List[AxisSpec] = Field(min_length=1, max_length=2)
    fixed: Dict[str, float] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=lambda: list(DEFAULT_OUTPUTS))
    oracle_check: bool = False
    omega_floor: Optional[float] = Field(default=None, gt=0)

    @field_validator("outputs")
    @classmethod
    def _resolve_outputs(cls, value: List[str]) -> List[str]:
        resolved = []
        for key in value:
            key = OUTPUT_ALIASES.get(key, key)
            if key not in OUTPUT_KEYS:
                expected = ", ".join(OUTPUT_KEYS)
                raise ValueError(f"unknown output {key!r}; expected one of {expected}")
            if key not in resolved:
                resolved.append(key)
        return resolved

    @field_validator("fixed")
    @classmethod
    def _known_fixed(cls, value: Dict[str, float]) -> Dict[str, float]:
        unknown = sorted(set(value) - set(FIXED_KEYS))
        if unknown:
            raise ValueError(f"unknown fixed parameter(s): {', '.join(unknown)}")
        return {key: float(v) for key, v in value.items()}

    @model_validator(mode="after")
    def _one_operating_point(self) -> "SweepSpec":
        names = [axis.name for axis in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("axes must be distinct")
        point = [n for n in names if n in POINT_AXES] + [k for k in self.fixed if k in POINT_AXES]
        if len(point) != 1:
            raise ValueError(
                "exactly one operating-point parameter needed among "
                f"{', '.join(POINT_AXES)}, got {point or 'none'}"
            )
        return self

    @property
    def row_count(self) -> int:
        return int(np.prod([axis.count for axis in self.axes]))

    def columns(self) -> List[str]:
        axis_names = [axis.name for axis in self.axes]
        columns = axis_names + [key for key in self.outputs if key not in axis_names]
        columns += ["valid", "reason"]
        if self.oracle_check:
            for key in ORACLE_OUTPUTS:
                columns += [f"oracle_{key}", f"delta_{key}"]
            columns.append("oracle_note")
        return columns


class SweepResult(BaseModel):
    """Rows in axis-major order, all values JSON scalars (None for missing)."""

    spec_echo: Dict[str, Any]
    columns: List[str]
    rows: List[Dict[str, Any]]
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @property
    def invalid_count(self) -> int:
        return sum(1 for row in self.rows if not row.get("valid", True))

    def column(self, key: str) -> List[Any]:
        return [row.get(key) for row in self.rows]

    def max_oracle_delta(self) -> Optional[float]:
        """Largest relative analytic-vs-oracle delta, None if no row was compared."""
        deltas = [value for row in self.rows for key, value in row.items()
                  if key.startswith("delta_") and value is not None]
        return max(deltas) if deltas else None
