"""
Exception hierarchy. Every error knows the CLI exit code it maps to.
"""


class CriticalityError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class InvalidInputError(CriticalityError, ValueError):
    """Parameters violate a precondition."""

    exit_code = 2


class DomainError(InvalidInputError):
    """A value lies outside the mathematical domain of an operation."""


class ConfigurationError(InvalidInputError):
    """A required parameter or sector is missing."""


class ContractError(InvalidInputError):
    """An oracle input breaks its contract (e.g. a non-Hermitian matrix)."""


class ResourceError(InvalidInputError):
    """A truncated Hilbert space exceeds the configured dimension cap."""


class TruncationError(CriticalityError, RuntimeError):
    """Doubling the Fock cutoff changed the result beyond tolerance."""

    exit_code = 2


class CriticalPointError(CriticalityError, ValueError):
    """At or beyond the CP the LBP couplings diverge (omega_minus at or below the floor)."""

    exit_code = 3


class PhaseError(CriticalityError, ValueError):
    """Superradiant-frame formulas requested in the normal phase (or mu out of range)."""

    exit_code = 4


class OracleToleranceError(CriticalityError, AssertionError):
    """Analytic and brute-force results disagree beyond tolerance."""

    exit_code = 5


class SweepError(CriticalityError, RuntimeError):
    """Every row of a sweep was invalid."""

    exit_code = 2


class OutputError(CriticalityError, OSError):
    """Dataset could not be written or read."""

    exit_code = 6
