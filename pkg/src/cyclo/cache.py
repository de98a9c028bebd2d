"""Append-only JSONL cache for per-class height computations.

One record per line: {p, q, residue, witness, height, smallest_k,
value_at_k, tool_version}.  Corrupt or incomplete lines are skipped with a
logged warning; the file is only ever appended to, so concurrent readers
stay consistent.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import asdict, dataclass
from pathlib import Path

from .config import TOOL_VERSION

log = logging.getLogger(__name__)

_FIELDS = (
    "p",
    "q",
    "residue",
    "witness",
    "height",
    "smallest_k",
    "value_at_k",
    "tool_version",
)


@dataclass(frozen=True)
class ClassHeightRecord:
    p: int
    q: int
    residue: int
    witness: int
    height: int
    smallest_k: int
    value_at_k: int
    tool_version: str = TOOL_VERSION


class HeightCache:
    """In-memory map keyed by (p, q, residue), optionally file backed."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._records: dict[tuple[int, int, int], ClassHeightRecord] = {}
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        with self.path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                    record = ClassHeightRecord(**{f: raw[f] for f in _FIELDS})
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    log.warning(
                        "skipping corrupt cache line %d in %s: %s",
                        lineno,
                        self.path,
                        exc,
                    )
                    continue
                key = (record.p, record.q, record.residue)
                self._records[key] = record

    def __len__(self) -> int:
        return len(self._records)

    def get(self, p: int, q: int, residue: int) -> ClassHeightRecord | None:
        return self._records.get((p, q, residue))

    def put(self, record: ClassHeightRecord):
        key = (record.p, record.q, record.residue)
        with self._lock:
            if self._records.get(key) == record:
                return
            self._records[key] = record
            if self.path is not None:
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(asdict(record), sort_keys=True) + "\n")
