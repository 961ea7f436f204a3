"""
CSV Writer
Figure tables with an embedded provenance comment
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Sequence, Type

from pydantic import BaseModel

logger = logging.getLogger(__name__)


def _format(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows(path: Path, row_model: Type[BaseModel], rows: Sequence[BaseModel], provenance: Dict[str, Any]) -> None:
    """
    Write figure rows as CSV

    The first line is '#' followed by the resolved configuration as JSON,
    the second the header in the row model's field order.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = list(row_model.model_fields)

    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("# " + json.dumps(provenance, sort_keys=True) + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            data = row.model_dump()
            writer.writerow([_format(data[c]) for c in columns])

    logger.info(f"Wrote {len(rows)} rows to {path}")
