"""
Logging Configuration for the criticality toolkit
"""

import logging
import logging.handlers
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

LOG_FILE = "critical_optomech.log"
ERROR_LOG_FILE = "critical_optomech_errors.log"
COMMAND_LOG_FILE = "command_executions.log"

DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class TaggedRecordFilter(logging.Filter):
    """Pass records tagged with ``tag`` (via ``extra_tags``) or whose message carries ``marker``."""

    def __init__(self, tag: str, marker: str):
        super().__init__()
        self.tag = tag
        self.marker = marker

    def filter(self, record: logging.LogRecord) -> bool:
        return self.tag in getattr(record, 'extra_tags', []) or self.marker in record.getMessage()


class LoggerConfig:
    """Configure logging for the command line front door and the library."""

    def __init__(self,
                 log_level: Optional[str] = None,
                 log_dir: str = "logs",
                 max_file_size: int = 10 * 1024 * 1024,  # 10MB
                 backup_count: int = 5,
                 enable_console: bool = True):
        """
        Args:
            log_level: root level name; falls back to $LOG_LEVEL, then INFO
            log_dir: directory for the rotating log files, created if missing
            max_file_size: rotation threshold per file in bytes
            backup_count: rotated files kept per log
            enable_console: attach a stderr handler at $CONSOLE_LOG_LEVEL (default WARNING)
        """
        self.log_level = log_level or os.getenv("LOG_LEVEL", "INFO")
        self.log_dir = Path(log_dir)
        self.max_file_size = max_file_size
        self.backup_count = backup_count
        self.enable_console = enable_console

        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._setup_logging()

    def _setup_logging(self):
        root_logger = logging.getLogger()
        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)
        root_logger.setLevel(getattr(logging, self.log_level.upper(), logging.INFO))

        detailed_formatter = logging.Formatter(
            fmt=('%(asctime)s | %(name)s | %(levelname)s | '
                 '%(filename)s:%(lineno)d | %(funcName)s | %(message)s'),
            datefmt=DATE_FORMAT,
        )
        root_logger.addHandler(self._rotating_handler(LOG_FILE, detailed_formatter, logging.DEBUG))
        root_logger.addHandler(
            self._rotating_handler(ERROR_LOG_FILE, detailed_formatter, logging.ERROR)
        )
        # One line per CLI command run, with timing
        command_handler = self._rotating_handler(COMMAND_LOG_FILE, detailed_formatter)
        command_handler.addFilter(TaggedRecordFilter('command_execution', 'CMD_EXEC'))
        root_logger.addHandler(command_handler)

        if self.enable_console:
            # stdout carries the key=value report
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(logging.Formatter(
                fmt='%(asctime)s | %(levelname)s | %(name)s | %(message)s', datefmt=DATE_FORMAT
            ))
            console_level = os.getenv("CONSOLE_LOG_LEVEL", "WARNING")
            console_handler.setLevel(getattr(logging, console_level.upper(), logging.WARNING))
            root_logger.addHandler(console_handler)

        logging.getLogger(__name__).info(
            f"Logging initialized - Level: {self.log_level}, Directory: {self.log_dir}"
        )

    def _rotating_handler(self, filename: str, formatter: logging.Formatter,
                          level: int = logging.NOTSET) -> logging.Handler:
        handler = logging.handlers.RotatingFileHandler(
            filename=self.log_dir / filename,
            maxBytes=self.max_file_size,
            backupCount=self.backup_count,
            encoding='utf-8'
        )
        handler.setFormatter(formatter)
        handler.setLevel(level)
        return handler


class AppLogger:
    """Logger wrapper adding a session id and structured records for numerical runs."""

    def __init__(self, name: str):
        self.logger = logging.getLogger(name)
        self._session_id = datetime.now().strftime("%Y%m%d_%H%M%S")

    def _log(self, level: int, message: str, **kwargs):
        self.logger.log(level, f"[{self._session_id}] {message}", extra=kwargs, stacklevel=3)

    def debug(self, message: str, **kwargs):
        self._log(logging.DEBUG, message, **kwargs)

    def info(self, message: str, **kwargs):
        self._log(logging.INFO, message, **kwargs)

    def warning(self, message: str, **kwargs):
        self._log(logging.WARNING, message, **kwargs)

    def error(self, message: str, **kwargs):
        self._log(logging.ERROR, message, **kwargs)

    def _record(self, ok: bool, tag: str, message: str, **fields: Any):
        extra = {'extra_tags': [tag], **fields}
        self.logger.log(logging.INFO if ok else logging.ERROR, message, extra=extra, stacklevel=3)

    def command_execution(self, command: str, parameters: Dict[str, Any], success: bool,
                          exit_code: int = 0, execution_time: Optional[float] = None,
                          error: Optional[str] = None):
        """One CLI command run."""
        status = "SUCCESS" if success else "FAILED"
        exec_time = f" in {execution_time:.3f}s" if execution_time else ""
        message = f"CMD_EXEC | {status} | Command: {command} | Exit: {exit_code}{exec_time}"
        if error:
            message += f" | Error: {error}"
        self._record(success, 'command_execution', message, command=command,
                     parameters=parameters, success=success, exit_code=exit_code,
                     execution_time=execution_time, error=error)

    def oracle_comparison(self, which: str, max_delta: float, tolerance: float,
                          rows: Optional[int] = None):
        """Analytic-vs-oracle comparison; a breach is logged as an error."""
        passed = max_delta <= tolerance
        status = "PASS" if passed else "BREACH"
        message = (
            f"ORACLE | {status} | Check: {which} | "
            f"Max delta: {max_delta:.3e} | Tol: {tolerance:.1e}"
        )
        if rows is not None:
            message += f" | Rows: {rows}"
        self._record(passed, 'oracle_comparison', message, check=which, max_delta=max_delta,
                     tolerance=tolerance, passed=passed)

    def sweep_operation(self, operation: str, rows: Optional[int] = None, invalid: int = 0,
                        success: bool = True, error: Optional[str] = None):
        status = "SUCCESS" if success else "FAILED"
        message = f"SWEEP_OP | {status} | Operation: {operation}"
        if rows is not None:
            message += f" | Rows: {rows} | Invalid: {invalid}"
        if error:
            message += f" | Error: {error}"
        self._record(success, 'sweep_operation', message, operation=operation, rows=rows,
                     invalid=invalid, error=error)


def initialize_logging(log_level: Optional[str] = None,
                       log_dir: str = "logs",
                       enable_console: bool = True) -> LoggerConfig:
    """Configure the root logger; call once, before the first command runs."""
    return LoggerConfig(log_level=log_level, log_dir=log_dir, enable_console=enable_console)


def get_logger(name: str) -> AppLogger:
    """Get an application logger instance."""
    return AppLogger(name)
