"""
Closed forms of the superradiant-frame pipeline: critical point, displacements,
effective quadratic coefficients, polariton spectrum, cavity-polariton couplings
and the Kerr coefficient.

All functions are pure. Frequencies may be given in any common unit; outputs of
frequency dimension come back in that unit.
"""

import math
from typing import Optional, Tuple

from .errors import ConfigurationError, CriticalPointError, DomainError, PhaseError
from .models import (
    CouplingReport,
    CriticalAnalysis,
    CriticalFrame,
    PolaritonSpectrum,
    QuadraticModel,
    SystemParams,
)

DEFAULT_OMEGA_FLOOR = 1e-9  # in units of omega_m
SPECTRUM_REL_TOL = 1e-12

PHASE_NORMAL = "normal"
PHASE_CRITICAL = "critical"
PHASE_SUPERRADIANT = "superradiant"


def _require_mu(mu: float, allow_above_one: bool = False):
    if not mu > 0:
        raise PhaseError(f"critical parameter mu must be positive, got {mu}")
    if mu > 1 and not allow_above_one:
        raise PhaseError(f"mu={mu} > 1: normal phase, superradiant-frame formulas invalid")


def critical_coupling(omega_m: float, omega_q: float) -> float:
    """G_c = sqrt(omega_m * omega_q) / 2."""
    if not (omega_m > 0 and omega_q > 0):
        raise DomainError(f"frequencies must be positive (omega_m={omega_m}, omega_q={omega_q})")
    return math.sqrt(omega_m * omega_q) / 2.0


def critical_parameter(G: float, g_crit: float) -> float:
    """mu = G_c^2 / G^2, defined on the superradiant side G >= G_c."""
    if not g_crit > 0:
        raise DomainError(f"critical coupling must be positive, got {g_crit}")
    if G < g_crit:
        raise PhaseError("normal phase: superradiant-frame formulas invalid")
    return (g_crit / G) ** 2


def phase_label(G: float, g_crit: float, rel_tol: float = SPECTRUM_REL_TOL) -> str:
    if math.isclose(G, g_crit, rel_tol=rel_tol, abs_tol=0.0):
        return PHASE_CRITICAL
    return PHASE_SUPERRADIANT if G > g_crit else PHASE_NORMAL


def displacements(params: SystemParams, mu: float) -> Tuple[float, float]:
    """Stationary displacement numbers (alpha_b, alpha_c) that cancel the linear drives."""
    _require_mu(mu)
    n = params.N
    sqrt_alpha_b = (2.0 * params.G / params.omega_m) * math.sqrt(n * (1.0 - mu * mu) / 4.0)
    alpha_c = n * (1.0 - mu) / 2.0
    return sqrt_alpha_b ** 2, alpha_c


def critical_frame(params: SystemParams) -> CriticalFrame:
    g_crit = critical_coupling(params.omega_m, params.omega_q)
    mu = critical_parameter(params.G, g_crit)
    if params.n_spins is None:
        return CriticalFrame(g_crit=g_crit, mu=mu)
    alpha_b, alpha_c = displacements(params, mu)
    return CriticalFrame(g_crit=g_crit, mu=mu, alpha_b=alpha_b, alpha_c=alpha_c,
                         k=params.N - alpha_c)


def general_coefficients(params: SystemParams, alpha_b: float, alpha_c: float,
                         literal_drive: bool = False) -> QuadraticModel:
    """
    Coefficients of the displaced-frame quadratic Hamiltonian for arbitrary displacements.

    The spin-mode drive's second term carries a 1/k normalization; with
    ``literal_drive=True`` it is evaluated without it, as first printed. Only the
    normalized form vanishes at the stationary displacements.
    """
    n = params.N
    if not 0 <= alpha_c < n:
        raise DomainError(f"alpha_c must lie in [0, N), got {alpha_c} for N={n}")
    if alpha_b < 0:
        raise DomainError(f"alpha_b must be non-negative, got {alpha_b}")

    G = params.G
    k = n - alpha_c
    root_bc = math.sqrt(alpha_b * alpha_c / (n * k))

    omega_eff = params.omega_q + 2.0 * G * root_bc
    drive_b = params.omega_m * math.sqrt(alpha_b) - 2.0 * G * math.sqrt(k * alpha_c / n)
    spin_drive = 4.0 * G * math.sqrt(k * alpha_b / n) * (n / 2.0 - alpha_c)
    if not literal_drive:
        spin_drive /= k
    drive_c = -params.omega_q * math.sqrt(alpha_c) + spin_drive
    g_eff = 2.0 * G * (n / 2.0 - alpha_c) / math.sqrt(n * k)
    eta = (G / (2.0 * k)) * root_bc * (2.0 * k + alpha_c)

    return QuadraticModel(omega_m=params.omega_m, Omega_q=omega_eff, E_b=drive_b, E_c=drive_c,
                          G_eff=g_eff, eta=eta)


def closed_form_coefficients(omega_q: float, G: float, mu: float,
                             omega_m: Optional[float] = None,
                             continue_below_threshold: bool = False) -> QuadraticModel:
    """
    Quadratic coefficients written through mu (drives vanish identically).

    ``omega_m`` defaults to the value implied by mu = omega_m*omega_q / (4 G^2).
    ``continue_below_threshold`` admits mu > 1 (analytic continuation, used to
    probe the instability with the symplectic oracle).
    """
    _require_mu(mu, allow_above_one=continue_below_threshold)
    if omega_m is None:
        omega_m = 4.0 * G * G * mu / omega_q

    return QuadraticModel(
        omega_m=omega_m,
        Omega_q=omega_q * (1.0 + mu) / (2.0 * mu),
        E_b=0.0,
        E_c=0.0,
        G_eff=G * mu * math.sqrt(2.0 / (1.0 + mu)),
        eta=omega_q * (1.0 - mu) * (3.0 + mu) / (8.0 * mu * (1.0 + mu)),
    )


def _branch_squares(omega_m: float, omega_q: float, G: float,
                    mu: float) -> Tuple[float, float, float]:
    """(omega_+^2, omega_-^2, tolerance); omega_-^2 from the product of roots."""
    a = omega_m * omega_m
    d = (omega_q / mu) ** 2
    cross = 16.0 * G * G * mu * omega_m * omega_q
    disc = math.sqrt((a - d) ** 2 + cross)
    plus_sq = 0.5 * (a + d + disc)
    minus_sq = (a * d - 0.25 * cross) / plus_sq
    return plus_sq, minus_sq, SPECTRUM_REL_TOL * max(a, d)


def mixing_angle(omega_m: float, omega_q: float, mu: float) -> float:
    """theta in (0, pi/2) from tan(2 theta) = 2 w_m w_q / (w_m^2 - w_q^2/mu^2)."""
    return 0.5 * math.atan2(2.0 * omega_m * omega_q, omega_m ** 2 - (omega_q / mu) ** 2)


def continued_lower_branch_sq(omega_m: float, omega_q: float, G: float, mu: float) -> float:
    """Lower-branch omega_-^2 continued to mu > 1 (negative there: the unstable region)."""
    _require_mu(mu, allow_above_one=True)
    _, minus_sq, tol = _branch_squares(omega_m, omega_q, G, mu)
    return 0.0 if abs(minus_sq) <= tol else minus_sq


def polariton_frequencies(omega_m: float, omega_q: float, G: float, mu: float,
                          continue_below_threshold: bool = False) -> PolaritonSpectrum:
    """
    UBP/LBP frequencies and mixing angle of the superradiant-frame quadratic Hamiltonian.

    ``continue_below_threshold`` admits mu > 1, where omega_-^2 < 0 and the
    spectrum comes back unstable with ``omega_minus`` None.
    """
    _require_mu(mu, allow_above_one=continue_below_threshold)
    plus_sq, minus_sq, tol = _branch_squares(omega_m, omega_q, G, mu)
    if abs(minus_sq) <= tol:
        minus_sq = 0.0
    stable = minus_sq >= -tol
    return PolaritonSpectrum(
        omega_plus=math.sqrt(plus_sq),
        omega_minus_sq=minus_sq,
        omega_minus=math.sqrt(minus_sq) if stable else None,
        theta=mixing_angle(omega_m, omega_q, mu),
        stable=stable,
    )


def spectrum_at_lower_frequency(omega_m: float, omega_q: float,
                                omega_minus: float) -> Tuple[float, PolaritonSpectrum]:
    """
    Invert the LBP dispersion: the mu (on the superradiant branch) at which omega_- takes
    the given value, and the spectrum there with omega_- carried exactly.
    """
    if omega_minus == 0:
        raise CriticalPointError("omega_minus = 0 is the critical point itself")
    if not 0 < omega_minus < omega_m:
        raise DomainError(f"omega_minus must lie in (0, omega_m), got {omega_minus}")

    lam = omega_minus * omega_minus
    a = omega_m * omega_m
    q2 = omega_q * omega_q
    # 1/mu^2 - 1, written without cancellation
    excess = lam * (a + q2 - lam) / (q2 * (a - lam))
    inv_mu_sq = 1.0 + excess
    mu = 1.0 / math.sqrt(inv_mu_sq)

    d = q2 * inv_mu_sq
    spectrum = PolaritonSpectrum(
        omega_plus=math.sqrt(a + d - lam),
        omega_minus_sq=lam,
        omega_minus=omega_minus,
        theta=0.5 * math.atan2(2.0 * omega_m * omega_q, a - d),
        stable=True,
    )
    return mu, spectrum


def decoupled_limit_spectrum(omega_m: float) -> PolaritonSpectrum:
    """
    The mu -> 0 end of the superradiant branch (G -> inf): omega_- -> omega_m,
    theta -> pi/2 and omega_+ -> inf, so g_-/g0 -> sin(theta) = 1.
    """
    if not omega_m > 0:
        raise DomainError(f"omega_m must be positive, got {omega_m}")
    return PolaritonSpectrum(
        omega_plus=math.inf,
        omega_minus_sq=omega_m * omega_m,
        omega_minus=omega_m,
        theta=0.5 * math.pi,
        stable=True,
    )


def kerr_coefficient(g_minus: float, omega_minus: float) -> float:
    """chi = g_-^2 / omega_-; sector energies carry -chi*n^2."""
    if not omega_minus > 0:
        raise DomainError(f"omega_minus must be positive, got {omega_minus}")
    return g_minus * g_minus / omega_minus


def optomech_couplings(g0: float, omega_m: float, spectrum: PolaritonSpectrum,
                       omega_floor: float = DEFAULT_OMEGA_FLOOR) -> CouplingReport:
    """
    Cavity couplings to the UBP and LBP.

    Args:
        g0: bare single-photon optomechanical coupling
        omega_m: phonon frequency
        spectrum: stable polariton spectrum
        omega_floor: smallest admissible omega_-, in units of omega_m
    """
    if not spectrum.stable or spectrum.omega_minus is None:
        raise PhaseError("unstable spectrum: omega_-^2 < 0")
    if spectrum.omega_minus <= omega_floor * omega_m:
        raise CriticalPointError(
            "at/beyond CP: coupling diverges; choose G < G_c-side offset or finite omega_-"
        )

    minus_ratio = math.sqrt(omega_m / spectrum.omega_minus) * math.sin(spectrum.theta)
    plus_ratio = math.sqrt(omega_m / spectrum.omega_plus) * math.cos(spectrum.theta)
    g_minus = g0 * minus_ratio

    return CouplingReport(
        g_plus=g0 * plus_ratio,
        g_minus=g_minus,
        chi=kerr_coefficient(g_minus, spectrum.omega_minus),
        coop_ratio=minus_ratio * minus_ratio,
    )


def required_spin_number(g_crit: float, g_single: float) -> float:
    """Spin number at which g*sqrt(N) reaches G_c."""
    if not g_single > 0:
        raise DomainError(f"single-spin coupling must be positive, got {g_single}")
    return (g_crit / g_single) ** 2


def mean_field_energy_per_spin(omega_q: float, mu: float) -> float:
    """Thermodynamic-limit ground energy per spin; mu >= 1 is the normal phase."""
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if mu >= 1:
        return -omega_q / 2.0
    return -(omega_q / 4.0) * (mu + 1.0 / mu)


def analyze(params: SystemParams, omega_floor: float = DEFAULT_OMEGA_FLOOR,
            strict: bool = False) -> CriticalAnalysis:
    """
    Run the closed-form chain for one point.

    With ``strict`` a CP-divergent point raises; otherwise ``couplings`` is None there.
    """
    if params.g_collective is None:
        raise ConfigurationError("analysis needs the collective coupling G")
    frame = critical_frame(params)
    model = closed_form_coefficients(params.omega_q, params.G, frame.mu, omega_m=params.omega_m)
    spectrum = polariton_frequencies(params.omega_m, params.omega_q, params.G, frame.mu)
    try:
        couplings = optomech_couplings(params.g0, params.omega_m, spectrum, omega_floor)
    except CriticalPointError:
        if strict:
            raise
        couplings = None
    return CriticalAnalysis(params=params, frame=frame, model=model, spectrum=spectrum,
                            couplings=couplings)
