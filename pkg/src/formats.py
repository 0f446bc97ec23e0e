"""JSON and CSV emission shared by every subcommand."""

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np

from .config import config
from .errors import InputFormatError

PathLike = Union[str, Path]


def round_floats(value: Any, digits: Optional[int] = None) -> Any:
    """Recursively round floats to ``digits`` significant digits; numpy scalars become Python ones."""
    digits = config.output.json_digits if digits is None else digits
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        return x if not math.isfinite(x) else float(f"{x:.{digits}g}")
    if isinstance(value, dict):
        return {str(k): round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [round_floats(v, digits) for v in value]
    return value


def dumps(document: Dict[str, Any], exact: bool = False) -> str:
    """Serialize a report. ``exact`` keeps full float repr for bit-exact reloading."""
    payload = document if exact else round_floats(document)
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def write_atomic(path: PathLike, text: str) -> Path:
    """Write through a temporary file in the target directory, then rename over the target."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def read_json(path: PathLike) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{path}: invalid JSON ({e})") from e
    except UnicodeDecodeError as e:
        raise InputFormatError(f"{path}: not UTF-8 text ({e})") from e
    if not isinstance(data, dict):
        raise InputFormatError(f"{path}: expected a JSON object at top level")
    return data


def to_csv(rows: Iterable[Dict[str, Any]], fields: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(round_floats(row))
    return buffer.getvalue()


__all__ = [
    'round_floats',
    'dumps',
    'write_atomic',
    'read_json',
    'to_csv',
]
