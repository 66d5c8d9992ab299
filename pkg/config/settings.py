"""
Numeric policy settings, read from the environment (prefix CRITOPT_) or a .env file.
"""

from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Tolerances, floors and caps shared by the library and the CLI."""

    model_config = SettingsConfigDict(
        env_prefix="CRITOPT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Dense oracle limits
    dimension_cap: int = Field(default=20000, gt=0)
    hermitian_tol: float = Field(default=1e-12, gt=0)
    residual_tol: float = Field(default=1e-9, gt=0)
    truncation_tol: float = Field(default=1e-8, gt=0)

    # omega_minus floor in units of omega_m; rows/points at or below are CP-divergent
    omega_floor: float = Field(default=1e-9, gt=0)

    analytic_tol: float = Field(default=1e-10, gt=0)
    oracle_tol: float = Field(default=1e-8, gt=0)
    dicke_tol: float = Field(default=0.2, gt=0)

    sweep_workers: int = Field(default=1, ge=1)

    # unset: LOG_LEVEL from the environment, then INFO
    log_level: Optional[str] = None
    log_dir: str = "logs"
    output_dir: str = "results"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings; call ``get_settings.cache_clear()`` after changing the environment."""
    return Settings()
