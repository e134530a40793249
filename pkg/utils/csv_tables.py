"""
Plot-ready CSV tables.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

logger = logging.getLogger(__name__)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def write_csv(path: Union[str, Path], fieldnames: Sequence[str], rows: Iterable[Mapping]) -> Path:
    """Write rows under a header line; None becomes an empty cell and infinities are spelled out."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
            n += 1
    logger.info(f"💾 Wrote {n} rows to {path}")
    return path


def read_csv(path: Union[str, Path]) -> list:
    with Path(path).open("r", newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
