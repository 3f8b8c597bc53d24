"""
Artifact writers.

CSV files are comma separated with a header row, LF line endings and
UTF-8; reals are written as %.17e so files reproduce bit-for-bit.
"""

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from delay_heat_control.solution.models import Field

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_number(value: float) -> str:
    return f"{float(value):.17e}"


def _format_cell(value: object) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format_number(value)


def write_csv(
    path: PathLike,
    header: Sequence[str],
    rows: Iterable[Sequence[object]],
    comments: Optional[List[str]] = None,
) -> Path:
    """
    Write rows under a header; integers stay integers, reals use %.17e.

    ``comments`` are written first, each prefixed with "# ".
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        for line in comments or []:
            f.write(f"# {line}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])
            count += 1
    logger.info(f"wrote {path} ({count} rows)")
    return path


def field_rows(*fields: Field) -> Iterable[List[float]]:
    """Rows x, t, value_1, value_2, ... for fields sharing one grid (t outer, x inner)."""
    first = fields[0]
    for other in fields[1:]:
        if other.values.shape != first.values.shape:
            raise ValueError(
                f"Invalid fields: shapes {first.values.shape} and {other.values.shape} differ"
            )
    for i, t in enumerate(first.ts):
        for j, x in enumerate(first.xs):
            yield [x, t] + [float(f.values[i, j]) for f in fields]


def write_field(path: PathLike, field: Field, column: str) -> Path:
    return write_csv(path, ["x", "t", column], field.rows())


def write_text(path: PathLike, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    logger.info(f"wrote {path}")
    return path


__all__ = ["field_rows", "format_number", "write_csv", "write_field", "write_text"]
