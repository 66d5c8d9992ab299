"""
Sweep engine: evaluates the closed-form chain on a grid, one independent row per
grid point, and optionally attaches symplectic-oracle columns.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from config.logging_config import get_logger
from config.settings import get_settings
from core import __version__
from core.criticality import (
    closed_form_coefficients,
    critical_coupling,
    decoupled_limit_spectrum,
    optomech_couplings,
    polariton_frequencies,
    spectrum_at_lower_frequency,
)
from core.errors import (
    ConfigurationError,
    CriticalityError,
    CriticalPointError,
    DomainError,
    PhaseError,
    SweepError,
)
from core.models import PolaritonSpectrum
from oracle.symplectic import (
    extract_polariton_couplings,
    quadratic_form_from_model,
    symplectic_diagonalize,
)

from .spec import COUPLING_OUTPUTS, ORACLE_OUTPUTS, SweepResult, SweepSpec

logger = get_logger(__name__)

TOOL_NAME = "critical-optomech"

REASON_CP = "CP divergence"
REASON_NORMAL = "normal phase"
REASON_INPUT = "invalid input"

# omega_+^2 / omega_-^2 above which a 2x2 eigensolve cannot resolve omega_- to oracle tolerance
ORACLE_CONDITION_LIMIT = 1e6


@dataclass(frozen=True)
class OperatingPoint:
    omega_m: float
    omega_q: float
    g_crit: float
    G: float
    mu: float
    g0: float
    spectrum: PolaritonSpectrum


def resolve_operating_point(values: Dict[str, float]) -> OperatingPoint:
    """
    Turn one grid point into (G, mu, spectrum).

    ``G_over_omega_m`` below G_c gives mu > 1 and the continued, unstable spectrum.
    ``omega_m_over_omega_minus`` = 1 is the mu -> 0 limit (G and omega_+ infinite).
    ``gc_minus_g_over_omega_m`` = d is read as G = G_c + d*omega_m on the
    superradiant side (distance from the CP).
    """
    omega_m = values.get("omega_m", 1.0)
    if "ratio_omega_q" not in values:
        raise ConfigurationError("ratio_omega_q must be an axis or a fixed parameter")
    omega_q = values["ratio_omega_q"] * omega_m
    g0 = values.get("g0", 1.0)
    if not g0 > 0:
        raise DomainError(f"g0 must be positive, got {g0}")
    g_crit = critical_coupling(omega_m, omega_q)

    if "G_over_omega_m" in values:
        G = values["G_over_omega_m"] * omega_m
        if not G > 0:
            raise DomainError(f"G must be positive, got {G}")
        mu = (g_crit / G) ** 2
        spectrum = polariton_frequencies(omega_m, omega_q, G, mu, continue_below_threshold=True)
    elif "mu" in values:
        mu = values["mu"]
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu}")
        G = g_crit / math.sqrt(mu)
        spectrum = polariton_frequencies(omega_m, omega_q, G, mu)
    elif "omega_m_over_omega_minus" in values:
        ratio = values["omega_m_over_omega_minus"]
        if not ratio > 0:
            raise DomainError(f"omega_m/omega_- must be positive, got {ratio}")
        if ratio == 1.0:
            mu, G, spectrum = 0.0, math.inf, decoupled_limit_spectrum(omega_m)
        else:
            mu, spectrum = spectrum_at_lower_frequency(omega_m, omega_q, omega_m / ratio)
            G = g_crit / math.sqrt(mu)
    else:
        distance = values["gc_minus_g_over_omega_m"]
        if distance < 0:
            raise DomainError(f"(G_c - G)/omega_m distance must be >= 0, got {distance}")
        G = g_crit + distance * omega_m
        mu = (g_crit / G) ** 2
        spectrum = polariton_frequencies(omega_m, omega_q, G, mu)

    return OperatingPoint(omega_m=omega_m, omega_q=omega_q, g_crit=g_crit, G=G, mu=mu, g0=g0,
                          spectrum=spectrum)


def _finite(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def _frequency_columns(point: OperatingPoint) -> Dict[str, Any]:
    spectrum = point.spectrum
    omega_minus = spectrum.omega_minus
    return {
        "G_over_omega_m": _finite(point.G / point.omega_m),
        "mu": point.mu,
        "omega_m_over_omega_minus": point.omega_m / omega_minus if omega_minus else None,
        "theta": spectrum.theta,
        "stable": spectrum.stable,
        "omega_minus_sq_over_omega_m_sq": spectrum.omega_minus_sq / point.omega_m ** 2,
        "omega_minus_over_omega_m": (
            omega_minus / point.omega_m if omega_minus is not None else None
        ),
        "omega_plus_over_omega_m": _finite(spectrum.omega_plus / point.omega_m),
    }


def _coupling_columns(point: OperatingPoint, omega_floor: float) -> Dict[str, Any]:
    # g0 is in omega_m units
    scale = point.g0 * point.omega_m
    report = optomech_couplings(scale, point.omega_m, point.spectrum, omega_floor)
    return {
        "g_minus_over_g0": report.g_minus / scale,
        "g_plus_over_g0": report.g_plus / scale,
        "chi": report.chi / point.omega_m,
        "coop_ratio": report.coop_ratio,
    }


def _oracle_columns(point: OperatingPoint, analytic: Dict[str, Any]) -> Dict[str, Any]:
    columns: Dict[str, Any] = {}
    spectrum = point.spectrum
    if not spectrum.stable:
        columns["oracle_note"] = "unstable"
        return columns
    if not spectrum.omega_minus:
        columns["oracle_note"] = "critical_point"
        return columns
    if spectrum.omega_plus ** 2 / spectrum.omega_minus_sq > ORACLE_CONDITION_LIMIT:
        columns["oracle_note"] = "ill_conditioned"
        return columns

    model = closed_form_coefficients(point.omega_q, point.G, point.mu, omega_m=point.omega_m)
    modes = symplectic_diagonalize(quadratic_form_from_model(model))
    g_plus, g_minus = extract_polariton_couplings(modes, g0=1.0)
    oracle = {
        "omega_minus_over_omega_m": float(modes.frequencies[0]) / point.omega_m,
        "omega_plus_over_omega_m": float(modes.frequencies[1]) / point.omega_m,
        "g_minus_over_g0": g_minus,
        "g_plus_over_g0": g_plus,
    }
    for key in ORACLE_OUTPUTS:
        value = analytic.get(key)
        columns[f"oracle_{key}"] = oracle[key]
        if value is not None:
            columns[f"delta_{key}"] = abs(value - oracle[key]) / abs(value)
    columns["oracle_note"] = "ok"
    return columns


def evaluate_point(values: Dict[str, float], spec: SweepSpec, omega_floor: float) -> Dict[str, Any]:
    """One sweep row; failures become an invalid row instead of an exception."""
    row: Dict[str, Any] = dict(values)
    row["valid"] = True
    row["reason"] = None
    needs_couplings = spec.oracle_check or any(key in COUPLING_OUTPUTS for key in spec.outputs)

    try:
        point = resolve_operating_point(values)
    except CriticalityError as e:
        logger.debug(f"invalid row {values}: {e}")
        row.update(valid=False, reason=REASON_NORMAL if isinstance(e, PhaseError) else REASON_INPUT)
        if spec.oracle_check:
            row["oracle_note"] = "invalid_row"
        return row

    analytic = _frequency_columns(point)
    if needs_couplings and point.spectrum.stable:
        try:
            analytic.update(_coupling_columns(point, omega_floor))
        except CriticalPointError:
            if any(key in COUPLING_OUTPUTS for key in spec.outputs):
                row.update(valid=False, reason=REASON_CP)

    if any(key in COUPLING_OUTPUTS for key in spec.outputs) and not point.spectrum.stable:
        row.update(valid=False, reason=REASON_NORMAL)

    for key in spec.outputs:
        if key not in values:
            row[key] = analytic.get(key)

    if spec.oracle_check:
        row.update(_oracle_columns(point, analytic))
    return row


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> SweepResult:
    """
    Evaluate every grid point, first axis slowest.

    Raises:
        SweepError: every row is invalid
    """
    settings = get_settings()
    omega_floor = spec.omega_floor if spec.omega_floor is not None else settings.omega_floor
    workers = workers or settings.sweep_workers

    names = [axis.name for axis in spec.axes]
    points = [dict(spec.fixed, **dict(zip(names, combo)))
              for combo in itertools.product(*(axis.values() for axis in spec.axes))]

    def evaluate(values: Dict[str, float]) -> Dict[str, Any]:
        return evaluate_point(values, spec, omega_floor)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw_rows = list(pool.map(evaluate, points))
    else:
        raw_rows = [evaluate(values) for values in points]

    columns = spec.columns()
    rows = [{key: row.get(key) for key in columns} for row in raw_rows]
    invalid = sum(1 for row in rows if not row["valid"])
    logger.sweep_operation(f"run_sweep:{spec.name}", rows=len(rows), invalid=invalid)

    if rows and invalid == len(rows):
        raise SweepError(f"all {len(rows)} rows invalid; first reason: {rows[0]['reason']}")

    return SweepResult(
        spec_echo=spec.model_dump(mode="json"),
        columns=columns,
        rows=rows,
        provenance=make_provenance(workers=workers, omega_floor=omega_floor),
    )


def make_provenance(**extra: Any) -> Dict[str, Any]:
    provenance = {
        "tool": TOOL_NAME,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    provenance.update(extra)
    return provenance


def merge_blocks(blocks: Dict[str, SweepResult], columns: List[str],
                 spec_echo: Dict[str, Any]) -> SweepResult:
    """Stack several sweeps under a ``block`` column with a shared column list."""
    rows = []
    for label, result in blocks.items():
        for row in result.rows:
            merged = {key: row.get(key) for key in columns}
            merged["block"] = label
            rows.append(merged)
    return SweepResult(spec_echo=spec_echo, columns=columns, rows=rows,
                       provenance=make_provenance())
