"""
Figure datasets: lower-branch frequency across the CP (fig2) and the enhanced
cavity-LBP coupling approaching the CP (fig3).
"""

from typing import Any, Dict, Optional

from config.logging_config import get_logger
from core.errors import DomainError

from .engine import merge_blocks, run_sweep
from .spec import ORACLE_OUTPUTS, AxisSpec, SweepResult, SweepSpec

logger = get_logger(__name__)

FIG2_COLUMNS = [
    "block",
    "G_over_omega_m",
    "mu",
    "omega_minus_sq_over_omega_m_sq",
    "omega_minus_over_omega_m",
    "stable",
    "valid",
    "reason",
]
FIG2_OUTPUTS = FIG2_COLUMNS[1:6]

FIG3_COLUMNS = [
    "block",
    "ratio_omega_q",
    "omega_m_over_omega_minus",
    "gc_minus_g_over_omega_m",
    "mu",
    "omega_minus_over_omega_m",
    "g_minus_over_g0",
    "g_plus_over_g0",
    "coop_ratio",
    "chi",
    "valid",
    "reason",
]
FIG3_OUTPUTS = ["omega_m_over_omega_minus", "mu", "omega_minus_over_omega_m", "g_minus_over_g0",
                "g_plus_over_g0", "coop_ratio", "chi"]

# Default axes; every range is overridable
FIG2_G_AXIS = dict(start=0.5, stop=2.0, count=61)
FIG2_MU_AXIS = dict(start=0.04, stop=1.0, count=25)
FIG3_FREQUENCY_AXIS = dict(start=1e2, stop=1e6, count=41, spacing="log")
FIG3_DISTANCE_AXIS = dict(start=0.001, stop=0.5, count=50)


def _oracle_columns() -> list:
    columns = []
    for key in ORACLE_OUTPUTS:
        columns += [f"oracle_{key}", f"delta_{key}"]
    return columns + ["oracle_note"]


def _check_ratio(ratio: float):
    if not ratio > 0:
        raise DomainError(f"omega_q/omega_m ratio must be positive, got {ratio}")


def fig2_dataset(ratio_omega_q: float = 4.0, oracle_check: bool = False,
                 workers: Optional[int] = None,
                 g_axis: Optional[Dict[str, Any]] = None,
                 mu_axis: Optional[Dict[str, Any]] = None) -> SweepResult:
    """
    omega_-/omega_m against G/omega_m (block "G", crossing the CP; below G_c the
    continued omega_-^2 is negative and the row is marked unstable) and against mu
    (block "mu", superradiant branch).
    """
    _check_ratio(ratio_omega_q)
    fixed = {"ratio_omega_q": ratio_omega_q}
    g_spec = SweepSpec(
        name="fig2:G",
        axes=[AxisSpec(name="G_over_omega_m", **{**FIG2_G_AXIS, **(g_axis or {})})],
        fixed=fixed,
        outputs=FIG2_OUTPUTS,
        oracle_check=oracle_check,
    )
    mu_spec = SweepSpec(
        name="fig2:mu",
        axes=[AxisSpec(name="mu", **{**FIG2_MU_AXIS, **(mu_axis or {})})],
        fixed=fixed,
        outputs=FIG2_OUTPUTS,
        oracle_check=oracle_check,
    )

    columns = FIG2_COLUMNS + (_oracle_columns() if oracle_check else [])
    blocks = {"G": run_sweep(g_spec, workers), "mu": run_sweep(mu_spec, workers)}
    result = merge_blocks(blocks, columns, spec_echo={
        "preset": "fig2",
        "ratio_omega_q": ratio_omega_q,
        "blocks": {label: block.spec_echo for label, block in blocks.items()},
    })
    logger.sweep_operation("fig2_dataset", rows=len(result.rows), invalid=result.invalid_count)
    return result


def fig3_dataset(ratio_omega_q: float = 10.0, oracle_check: bool = False,
                 workers: Optional[int] = None,
                 frequency_axis: Optional[Dict[str, Any]] = None,
                 distance_axis: Optional[Dict[str, Any]] = None) -> SweepResult:
    """
    g_-/g0 against omega_m/omega_- (block "a", log axis) and against the CP
    distance (G_c - G)/omega_m (block "b"), read as G = G_c + d*omega_m.

    A frequency axis starting at omega_m/omega_- = 1 yields the mu -> 0 limit row
    with g_-/g0 = 1; values below 1 are invalid rows.
    """
    _check_ratio(ratio_omega_q)
    fixed = {"ratio_omega_q": ratio_omega_q}
    frequency_spec = SweepSpec(
        name="fig3:a",
        axes=[AxisSpec(name="omega_m_over_omega_minus",
                       **{**FIG3_FREQUENCY_AXIS, **(frequency_axis or {})})],
        fixed=fixed,
        outputs=FIG3_OUTPUTS,
        oracle_check=oracle_check,
    )
    distance_spec = SweepSpec(
        name="fig3:b",
        axes=[AxisSpec(name="gc_minus_g_over_omega_m",
                       **{**FIG3_DISTANCE_AXIS, **(distance_axis or {})})],
        fixed=fixed,
        outputs=FIG3_OUTPUTS,
        oracle_check=oracle_check,
    )

    columns = FIG3_COLUMNS + (_oracle_columns() if oracle_check else [])
    blocks = {"a": run_sweep(frequency_spec, workers), "b": run_sweep(distance_spec, workers)}
    for block in blocks.values():
        for row in block.rows:
            row["ratio_omega_q"] = ratio_omega_q
    result = merge_blocks(blocks, columns, spec_echo={
        "preset": "fig3",
        "ratio_omega_q": ratio_omega_q,
        "blocks": {label: block.spec_echo for label, block in blocks.items()},
    })
    logger.sweep_operation("fig3_dataset", rows=len(result.rows), invalid=result.invalid_count)
    return result


PRESETS = {
    "fig2": fig2_dataset,
    "fig3": fig3_dataset,
}
