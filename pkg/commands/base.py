"""
Command base class and registry for the command line front door.

Every subcommand declares its parameters (turned into argparse flags), fills an
ordered report and never lets an exception escape ``_invoke``.
"""

import argparse
import json
import math
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from config.logging_config import get_logger
from config.run_config import RunConfig, resolve_run_config
from core.criticality import (
    critical_coupling,
    polariton_frequencies,
    spectrum_at_lower_frequency,
)
from core.errors import ConfigurationError, CriticalityError, DomainError
from core.models import PolaritonSpectrum, SystemParams
from core.units import FrequencyUnit
from sweeps.export import FORMATS, format_cell

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1

# Physical inputs accepted by every subcommand
PARAMETER_FLAGS = [
    {"name": "omega_m", "type": "float", "help": "phonon frequency"},
    {"name": "omega_q", "type": "float", "help": "spin splitting"},
    {"name": "g_single", "type": "float", "help": "single-spin coupling g"},
    {"name": "n_spins", "type": "int", "help": "spin number N"},
    {"name": "g_collective", "type": "float", "help": "collective coupling G = g sqrt(N)"},
    {"name": "g0", "type": "float", "help": "bare single-photon optomechanical coupling"},
    {"name": "omega_a", "type": "float", "help": "cavity frequency"},
    {"name": "omega_minus", "type": "float", "help": "LBP frequency (alternative to G)"},
    {"name": "g_minus", "type": "float", "help": "cavity-LBP coupling (kerr only)"},
]


@dataclass(frozen=True)
class ResolvedPoint:
    """Operating point in omega_m units plus the raw omega_m for converting back."""

    params: SystemParams
    g_crit: float
    G: float
    mu: float
    spectrum: PolaritonSpectrum
    omega_m_input: float


def resolve_point(config: RunConfig, continue_below_threshold: bool = False) -> ResolvedPoint:
    """
    Fix (G, mu, spectrum) from either the collective coupling or a prescribed omega_-.

    G wins when both are known.
    """
    params, _ = config.system_params()
    normalized, _ = config.normalized()
    g_crit = critical_coupling(params.omega_m, params.omega_q)

    if params.g_collective is not None:
        if normalized.get("omega_minus") is not None:
            logger.warning("both G and omega_minus given; omega_minus ignored")
        G = params.g_collective
        if not G > 0:
            raise DomainError(f"G must be positive, got {G}")
        mu = (g_crit / G) ** 2
        spectrum = polariton_frequencies(params.omega_m, params.omega_q, G, mu,
                                         continue_below_threshold=continue_below_threshold)
    elif normalized.get("omega_minus") is not None:
        mu, spectrum = spectrum_at_lower_frequency(params.omega_m, params.omega_q,
                                                   normalized["omega_minus"])
        G = g_crit / math.sqrt(mu)
    else:
        raise ConfigurationError(
            "operating point unknown: give g_collective, g_single + n_spins, or omega_minus"
        )

    return ResolvedPoint(params=params, g_crit=g_crit, G=G, mu=mu, spectrum=spectrum,
                         omega_m_input=float(config.raw_values()["omega_m"]))


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _add_parameter(parser: argparse.ArgumentParser, parameter: Dict[str, Any]):
    kind = parameter.get("type", "str")
    kwargs: Dict[str, Any] = {"help": parameter.get("help"), "default": None}
    if "choices" in parameter:
        kwargs["choices"] = parameter["choices"]

    if kind == "bool":
        kwargs["action"] = "store_true"
    elif kind == "int_list":
        kwargs.update(type=int, nargs="+")
    else:
        kwargs["type"] = {"float": float, "int": int, "str": str}[kind]

    if parameter.get("positional"):
        kwargs["nargs"] = "?"
        parser.add_argument(parameter["name"], **kwargs)
    else:
        parser.add_argument(_flag(parameter["name"]), dest=parameter["name"], **kwargs)


def global_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", dest="config_path", default=None,
                        help="flat YAML file mirroring the run configuration")
    parser.add_argument("--profile", default=None, help="shipped parameter profile")
    parser.add_argument("--unit", default=None, choices=[unit.value for unit in FrequencyUnit],
                        help="units of the frequency inputs")
    parser.add_argument("--out", default=None, help="dataset output path")
    parser.add_argument("--format", default=None, choices=FORMATS, help="dataset format")
    parser.add_argument("--tol", type=float, default=None, help="comparison tolerance")
    parser.add_argument("--omega-floor", dest="omega_floor", type=float, default=None,
                        help="CP floor on omega_-, in units of omega_m")
    parser.add_argument("--dimension-cap", dest="dimension_cap", type=int, default=None,
                        help="largest dense Hilbert-space dimension")
    for parameter in PARAMETER_FLAGS:
        _add_parameter(parser, parameter)
    return parser


class Command:
    """Base class for subcommands."""

    def get_name(self) -> str:
        raise NotImplementedError("Subclasses must implement get_name()")

    def get_description(self) -> str:
        raise NotImplementedError("Subclasses must implement get_description()")

    def get_parameters(self) -> List[Dict[str, Any]]:
        """Command-specific parameters: name, type (float|int|str|bool|int_list), help."""
        return []

    def run(self, config: RunConfig, report: Dict[str, Any]) -> Optional[str]:
        """
        Fill ``report`` in display order; may return a closing message.

        Raises CriticalityError subclasses; whatever was put in ``report`` before the
        failure is still printed.
        """
        raise NotImplementedError("Subclasses must implement run()")

    def _invoke(self, config: RunConfig) -> Dict[str, Any]:
        """Execute the command. Never raises; the exit code travels in the result."""
        logger.debug(f"Executing {self.get_name()} with {config.echo()}")
        start_time = time.time()
        report: Dict[str, Any] = {}

        try:
            message = self.run(config, report)
            result = {"success": True, "exit_code": EXIT_OK, "report": report,
                      "message": message}
        except CriticalityError as e:
            result = {"success": False, "exit_code": e.exit_code, "report": report,
                      "error": str(e)}
        except ValidationError as e:
            result = {"success": False, "exit_code": 2, "report": report,
                      "error": f"invalid parameters: {e}"}
        except OSError as e:
            result = {"success": False, "exit_code": 6, "report": report, "error": str(e)}
        except Exception as e:
            logger.error(f"Unexpected failure in {self.get_name()}: {e}")
            result = {"success": False, "exit_code": EXIT_UNEXPECTED, "report": report,
                      "error": str(e)}

        logger.command_execution(
            command=self.get_name(),
            parameters=config.echo(),
            success=result["success"],
            exit_code=result["exit_code"],
            execution_time=time.time() - start_time,
            error=result.get("error"),
        )
        return result


def render_lines(result: Dict[str, Any], config: Optional[RunConfig] = None) -> List[str]:
    """key=value lines: the resolved config echo, the report, then the outcome."""
    lines = []
    if config is not None:
        for key, value in config.echo().items():
            if isinstance(value, list):
                value = ",".join(str(item) for item in value)
            elif isinstance(value, dict):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"config.{key}={format_cell(value)}")
    for key, value in result.get("report", {}).items():
        lines.append(f"{key}={format_cell(value)}")
    if result.get("message"):
        lines.append(f"message={result['message']}")
    if result.get("error"):
        lines.append("error=" + " ".join(str(result["error"]).split()))
    lines.append(f"exit_code={result['exit_code']}")
    return lines


class CommandRegistry:
    """Registered subcommands and the argument parser built from them."""

    def __init__(self, name: str, version: str):
        self.name = name
        self.version = version
        self.commands: Dict[str, Command] = {}

    def register_command(self, command: Command):
        self.commands[command.get_name()] = command
        logger.debug(f"Registered command: {command.get_name()}")

    def get(self, name: str) -> Command:
        if name not in self.commands:
            raise ConfigurationError(f"unknown command {name!r}")
        return self.commands[name]

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=self.name,
                                         description="Criticality-enhanced optomechanics toolkit")
        parser.add_argument("--version", action="version", version=f"%(prog)s {self.version}")
        subparsers = parser.add_subparsers(dest="command", required=True)
        shared = global_parser()
        for name, command in self.commands.items():
            subparser = subparsers.add_parser(name, parents=[shared],
                                              help=command.get_description())
            for parameter in command.get_parameters():
                _add_parameter(subparser, parameter)
        return parser

    def dispatch(self, argv: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        """
        Parse argv, resolve the run configuration and invoke the command.

        Returns the command result plus the resolved ``config`` (None when
        resolution itself failed).
        """
        args = vars(self.build_parser().parse_args(argv))
        name = args.pop("command")
        config_path = args.pop("config_path")

        try:
            config = resolve_run_config(name, flags=args, config_path=config_path)
        except CriticalityError as e:
            logger.error(f"Configuration failed for {name}: {e}")
            return {"success": False, "exit_code": e.exit_code, "report": {}, "error": str(e),
                    "config": None}

        result = self.get(name)._invoke(config)
        result["config"] = config
        return result
