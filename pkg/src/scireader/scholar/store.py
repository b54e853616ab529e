"""Record store: dump ingestion with dedup, persistence, snapshot publishing.

Readers call `snapshot()` and keep using the returned object; ingestion
builds a fresh snapshot from the updated record map and swaps the reference
in one assignment, so in-flight searches are never affected.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field

from .index import IndexSnapshot, build_snapshot
from .records import SchemaError, dedup_key, merge_records, parse_jsonl

RECORDS_FILE = "records.jsonl"


def bundled_corpus_lines() -> list:
    """The bundled 1,000-record fixture dump, as JSON lines."""
    from importlib import resources as importlib_resources

    raw = (
        importlib_resources.files("scireader.data")
        .joinpath("scholar_corpus.jsonl")
        .read_text(encoding="utf-8")
    )
    return raw.splitlines()


@dataclass
class IngestReport:
    accepted: int = 0
    deduplicated: int = 0
    rejected: list = field(default_factory=list)  # (line_no, reason)


class ScholarStore:
    """In-memory record map with optional on-disk persistence."""

    def __init__(self, data_dir: str | None = None):
        self.data_dir = data_dir
        self._records: dict = {}
        self._by_key: dict = {}
        self._lock = threading.Lock()
        self._snapshot = build_snapshot({})
        if data_dir:
            os.makedirs(data_dir, exist_ok=True)
            self._load()
            self.rebuild_index()

    # -- reading ---------------------------------------------------------

    def snapshot(self) -> IndexSnapshot:
        return self._snapshot

    def __len__(self) -> int:
        return len(self._records)

    # -- ingestion -------------------------------------------------------

    def ingest(self, lines) -> IngestReport:
        """Ingest a JSON-lines dump (iterable of lines or a file object)."""
        report = IngestReport()
        with self._lock:
            changed = False
            for line_no, item in parse_jsonl(lines):
                if isinstance(item, SchemaError):
                    report.rejected.append((line_no, str(item)))
                    continue
                report.accepted += 1
                key = dedup_key(item)
                existing_id = self._by_key.get(key)
                if existing_id is not None:
                    report.deduplicated += 1
                    merged = merge_records(self._records[existing_id], item)
                    if merged != self._records[existing_id]:
                        self._records[existing_id] = merged
                        changed = True
                else:
                    self._records[item.id] = item
                    self._by_key[key] = item.id
                    changed = True
            if changed:
                self._persist()
                self._snapshot = build_snapshot(self._records)
        return report

    def rebuild_index(self) -> IndexSnapshot:
        with self._lock:
            self._snapshot = build_snapshot(self._records)
        return self._snapshot

    # -- persistence -----------------------------------------------------

    def _records_path(self) -> str:
        return os.path.join(self.data_dir, RECORDS_FILE)

    def _load(self):
        path = self._records_path()
        if not os.path.exists(path):
            return
        with open(path, encoding="utf-8") as fh:
            for _no, item in parse_jsonl(fh):
                if isinstance(item, SchemaError):
                    continue
                self._records[item.id] = item
                self._by_key[dedup_key(item)] = item.id

    def _persist(self):
        if not self.data_dir:
            return
        path = self._records_path()
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for doc_id in sorted(self._records):
                fh.write(json.dumps(self._records[doc_id].to_json(), ensure_ascii=False))
                fh.write("\n")
        os.replace(tmp, path)
