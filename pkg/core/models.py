"""
Domain records. All are immutable and dump to a flat JSON-compatible layout
(field names as declared, numbers as IEEE-754 doubles).

Frequencies are stored in units of omega_m unless a caller deliberately
passes another common scale (every operation is scale covariant).
"""

import math
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import ConfigurationError
from .units import FrequencyUnit, normalize_values

KERR_SIGN_NOTE = "exact sector energies E(n) = omega_a*n - chi*n^2"


class SystemParams(BaseModel):
    """Raw physical inputs. ``omega_q`` is the spin splitting (also written omega_b)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega_m: float = Field(gt=0)
    omega_q: float = Field(gt=0)
    g_single: Optional[float] = Field(default=None, ge=0)
    n_spins: Optional[int] = Field(default=None, gt=0)
    g_collective: Optional[float] = Field(default=None, ge=0)
    g0: float = Field(default=1.0, ge=0)
    omega_a: float = Field(default=0.0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _resolve_collective_coupling(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        g = data.get("g_single")
        n = data.get("n_spins")
        big_g = data.get("g_collective")

        if g is not None and n is not None:
            derived = float(g) * math.sqrt(float(n))
            if big_g is None:
                data["g_collective"] = derived
            elif not math.isclose(float(big_g), derived, rel_tol=1e-12, abs_tol=0.0):
                raise ValueError(
                    f"g_collective={big_g} inconsistent with g_single*sqrt(n_spins)={derived}"
                )
        elif big_g is not None and n is not None and g is None:
            data["g_single"] = float(big_g) / math.sqrt(float(n))
        return data

    @property
    def G(self) -> float:
        if self.g_collective is None:
            raise ConfigurationError(
                "collective coupling unknown: give g_collective or g_single + n_spins"
            )
        return self.g_collective

    @property
    def N(self) -> int:
        if self.n_spins is None:
            raise ConfigurationError("spin number N is required for this operation")
        return self.n_spins

    def with_updates(self, **changes: Any) -> "SystemParams":
        """Copy with some fields replaced, re-running validation."""
        data = self.model_dump()
        if "g_collective" in changes and "g_single" not in changes:
            data["g_single"] = None
        elif "g_single" in changes and "g_collective" not in changes:
            data["g_collective"] = None
        elif "n_spins" in changes and data.get("g_collective") is not None:
            # keep G fixed, re-derive g
            data["g_single"] = None
        data.update(changes)
        return SystemParams(**data)


class CriticalFrame(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_crit: float
    mu: float
    alpha_b: Optional[float] = None
    alpha_c: Optional[float] = None
    k: Optional[float] = None


class QuadraticModel(BaseModel):
    """
    Coefficients of
    w_m b'b + W_q c'c + E_b(b+b') + E_c(c+c') + G_eff(b+b')(c+c') + eta(c+c')^2.
    """

    model_config = ConfigDict(frozen=True)

    omega_m: float
    Omega_q: float
    E_b: float = 0.0
    E_c: float = 0.0
    G_eff: float
    eta: float = 0.0


class PolaritonSpectrum(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega_plus: float
    omega_minus_sq: float
    omega_minus: Optional[float]
    theta: float
    stable: bool


class CouplingReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_plus: float
    g_minus: float
    chi: float
    chi_sign_note: str = KERR_SIGN_NOTE
    coop_ratio: float


class CriticalAnalysis(BaseModel):
    """Everything the closed-form chain knows about one parameter point."""

    model_config = ConfigDict(frozen=True)

    params: SystemParams
    frame: CriticalFrame
    model: QuadraticModel
    spectrum: PolaritonSpectrum
    couplings: Optional[CouplingReport] = None


def normalize_inputs(
    values: Mapping[str, Any], unit: Union[FrequencyUnit, str] = FrequencyUnit.OMEGA_M
) -> Tuple[SystemParams, float]:
    """
    Build ``SystemParams`` in omega_m units from values tagged with ``unit``.

    Keys that are not ``SystemParams`` fields (e.g. ``omega_minus``) are ignored here.

    Returns:
        (params, reference omega_m in angular units of the input)
    """
    normalized, reference = normalize_values(values, unit)
    fields = {key: value for key, value in normalized.items()
              if key in SystemParams.model_fields and value is not None}
    return SystemParams(**fields), reference


def to_record(model: BaseModel) -> Dict[str, Any]:
    """JSON-compatible record of a domain model."""
    return model.model_dump(mode="json")
