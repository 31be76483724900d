"""JSON and CSV output for analysis reports."""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Mapping

from ..utils import get_config, get_logger

logger = get_logger(__name__)

LEAF_COLUMNS = ("id", "gen", "level", "type", "diam", "h_exponent")
HISTOGRAM_COLUMNS = ("macro_dimension", "jump", "count")


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_report_json(report: Any, path: Path) -> None:
    """Write any report with a ``to_dict`` method (or a plain dict) as JSON."""
    data = report.to_dict() if hasattr(report, "to_dict") else report
    indent = get_config().get_io_config().get("json_indent", 2)
    with open(_prepare(path), "w") as f:
        json.dump(data, f, indent=indent)
        f.write("\n")
    logger.info(f"Report written to {path}")


def write_report_csv(report, path: Path) -> None:
    """Per-leaf rows of a GradingReport: id, gen, level, type, diam, h_exponent."""
    with open(_prepare(path), "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=LEAF_COLUMNS)
        writer.writeheader()
        for row in report.rows():
            writer.writerow({**row, "diam": repr(row["diam"])})
    logger.info(f"Per-leaf CSV written to {path}")


def write_histogram_csv(histogram: Mapping[int, Mapping[int, int]], path: Path) -> None:
    """Level-jump histogram as (macro_dimension, jump, count) rows."""
    rows: Dict[Any, int] = {}
    for n in sorted(histogram, key=int):
        for jump in sorted(histogram[n], key=int):
            rows[(int(n), int(jump))] = histogram[n][jump]
    with open(_prepare(path), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(HISTOGRAM_COLUMNS)
        for (n, jump), count in rows.items():
            writer.writerow((n, jump, count))
    logger.info(f"Histogram CSV written to {path}")
