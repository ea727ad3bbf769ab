"""NDJSON record streams and their CSV conversion."""

import csv
import json
import logging
from pathlib import Path
from typing import Dict, Iterator, List, Union

from aqg_lab.dynamics import DiagnosticsRecord

logger = logging.getLogger(__name__)


class NdjsonRecordWriter:
    """Append one JSON object per line, flushing after every record."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.count = 0
        self._handle = None

    def __enter__(self) -> "NdjsonRecordWriter":
        self._handle = self.path.open("w", encoding="utf-8")
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def write(self, record: Union[DiagnosticsRecord, Dict]) -> None:
        line = record.to_ndjson() if isinstance(record, DiagnosticsRecord) else json.dumps(record)
        self._handle.write(line + "\n")
        self._handle.flush()
        self.count += 1


def read_records(path: Path) -> Iterator[Dict[str, float]]:
    """Yield the flat records of an NDJSON file lazily, skipping blank lines."""
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                yield json.loads(line)


def records_to_csv(source: Path, target: Path) -> int:
    """
    Convert an NDJSON record stream to CSV.

    The header is the union of keys in first-seen order; missing values are left empty.

    Returns:
        int: Number of rows written
    """
    columns: List[str] = []
    seen = set()
    for record in read_records(source):
        for key in record:
            if key not in seen:
                seen.add(key)
                columns.append(key)

    rows = 0
    with Path(target).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=columns, restval="")
        writer.writeheader()
        for record in read_records(source):
            writer.writerow(record)
            rows += 1
    logger.info(f"Wrote {rows} rows with {len(columns)} columns to {target}")
    return rows
