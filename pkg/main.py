#!/usr/bin/env python3
"""
Critical Optomechanics Toolkit - Main Entry Point
"""

import os
import sys
from pathlib import Path
from typing import Optional, Sequence

# Add the current directory to the Python path
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))

from config.logging_config import get_logger, initialize_logging  # noqa: E402
from config.settings import get_settings  # noqa: E402
from core import __version__  # noqa: E402

from commands.base import CommandRegistry, render_lines  # noqa: E402
from commands.converge import ConvergeCommand  # noqa: E402
from commands.critical_point import CriticalPointCommand  # noqa: E402
from commands.enhance import EnhanceCommand  # noqa: E402
from commands.kerr import KerrCommand  # noqa: E402
from commands.oracle import OracleCommand  # noqa: E402
from commands.spectrum import SpectrumCommand  # noqa: E402
from commands.sweep import SweepCommand  # noqa: E402

logger = get_logger(__name__)


def create_app() -> CommandRegistry:
    """Create the command registry with every subcommand."""
    app = CommandRegistry(name="critical-optomech", version=__version__)
    for command in (
        CriticalPointCommand(),
        SpectrumCommand(),
        EnhanceCommand(),
        KerrCommand(),
        SweepCommand(),
        OracleCommand(),
        ConvergeCommand(),
    ):
        app.register_command(command)
    logger.debug(f"Registered {len(app.commands)} commands")
    return app


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; the report goes to stdout, logs to stderr and files."""
    settings = get_settings()
    initialize_logging(
        log_level=settings.log_level,
        log_dir=settings.log_dir,
        enable_console=os.getenv("ENABLE_CONSOLE_LOGGING", "true").lower() == "true",
    )

    try:
        result = create_app().dispatch(argv)
    except KeyboardInterrupt:
        logger.info("Run interrupted by user")
        return 130

    for line in render_lines(result, result.get("config")):
        print(line)
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
