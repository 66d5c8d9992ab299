"""
Dataset persistence: CSV (header row, LF endings, 17 significant digits) and JSON
({spec_echo, provenance, rows}).
"""

import csv
import json
import math
from pathlib import Path
from typing import Any, Union

from pydantic import ValidationError

from config.logging_config import get_logger
from core.errors import ConfigurationError, OutputError

from .spec import SweepResult

logger = get_logger(__name__)

FORMATS = ("csv", "json")


def format_cell(value: Any) -> str:
    """CSV text of one value; missing and NaN become an empty cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if math.isnan(value) else format(value, ".17g")
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def export(result: SweepResult, fmt: str, path: Union[str, Path]) -> Path:
    """
    Write ``result`` to ``path`` as csv or json.

    Raises:
        OutputError: the file could not be written
    """
    if fmt not in FORMATS:
        raise ConfigurationError(f"format must be one of {FORMATS}, got {fmt!r}")
    path = Path(path)

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            with open(path, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(result.columns)
                for row in result.rows:
                    writer.writerow([format_cell(row.get(key)) for key in result.columns])
        else:
            payload = {
                "spec_echo": result.spec_echo,
                "provenance": result.provenance,
                "columns": result.columns,
                "rows": [{key: _json_value(row.get(key)) for key in result.columns}
                         for row in result.rows],
            }
            with open(path, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, allow_nan=False)
                f.write("\n")
    except OSError as e:
        logger.sweep_operation(f"export:{fmt}", success=False, error=str(e))
        raise OutputError(f"cannot write {path}: {e}") from e

    logger.sweep_operation(f"export:{fmt}", rows=len(result.rows), invalid=result.invalid_count)
    return path


def load_json(path: Union[str, Path]) -> SweepResult:
    """Read back a dataset written by ``export(..., "json", ...)``."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise OutputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise OutputError(f"{path} is not valid JSON: {e}") from e

    try:
        return SweepResult(**data)
    except (TypeError, ValidationError) as e:
        raise OutputError(f"{path} is not a sweep dataset: {e}") from e
