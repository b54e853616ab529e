"""Content-addressed document storage and the records manifest."""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import asdict, dataclass, replace

from .errors import UnknownDoc

STATUSES = ("parsing", "structuring", "annotating", "ready", "degraded", "failed")
_ORDER = {s: i for i, s in enumerate(STATUSES)}


@dataclass(frozen=True)
class DocRecord:
    id: str
    origin: str  # upload | url | doi
    origin_detail: str = ""
    title: str = ""
    opened_at: float = 0.0
    bookmarked: bool = False
    status: str = "parsing"
    reasons: tuple = ()  # degraded stage reasons
    error: str | None = None  # failed reason

    def to_json(self) -> dict:
        data = asdict(self)
        data["reasons"] = list(self.reasons)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "DocRecord":
        data = dict(data)
        data["reasons"] = tuple(data.get("reasons", ()))
        return cls(**data)


def doc_id_for(pdf_bytes: bytes) -> str:
    return hashlib.sha256(pdf_bytes).hexdigest()[:16]


class DocStore:
    """PDF bytes by content hash, JSON artifacts per doc, one manifest."""

    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        self.pdf_dir = os.path.join(data_dir, "pdfs")
        self.artifact_dir = os.path.join(data_dir, "artifacts")
        os.makedirs(self.pdf_dir, exist_ok=True)
        os.makedirs(self.artifact_dir, exist_ok=True)
        self._manifest_path = os.path.join(data_dir, "records.json")
        self._lock = threading.Lock()
        self._records: dict = {}
        self._load()

    # -- manifest --------------------------------------------------------

    def _load(self):
        if not os.path.exists(self._manifest_path):
            return
        with open(self._manifest_path, encoding="utf-8") as fh:
            data = json.load(fh)
        self._records = {k: DocRecord.from_json(v) for k, v in data.items()}

    def _persist_locked(self):
        tmp = self._manifest_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(
                {k: r.to_json() for k, r in sorted(self._records.items())},
                fh,
                ensure_ascii=False,
                indent=1,
            )
        os.replace(tmp, self._manifest_path)

    # -- records ---------------------------------------------------------

    def get(self, doc_id: str) -> DocRecord:
        rec = self._records.get(doc_id)
        if rec is None:
            raise UnknownDoc("no document %s" % doc_id)
        return rec

    def maybe_get(self, doc_id: str):
        return self._records.get(doc_id)

    def listing(self) -> list:
        return sorted(self._records.values(), key=lambda r: (-r.opened_at, r.id))

    def upsert(self, record: DocRecord) -> None:
        with self._lock:
            self._records[record.id] = record
            self._persist_locked()

    def update(self, doc_id: str, **changes) -> DocRecord:
        with self._lock:
            rec = self._records.get(doc_id)
            if rec is None:
                raise UnknownDoc("no document %s" % doc_id)
            new_status = changes.get("status")
            if new_status is not None and _ORDER[new_status] < _ORDER[rec.status]:
                raise ValueError(
                    "status cannot move backwards: %s -> %s" % (rec.status, new_status)
                )
            rec = replace(rec, **changes)
            self._records[doc_id] = rec
            self._persist_locked()
            return rec

    def delete(self, doc_ids) -> None:
        """All-or-nothing: unknown ids leave the store untouched."""
        with self._lock:
            missing = [d for d in doc_ids if d not in self._records]
            if missing:
                raise UnknownDoc("no document %s" % missing[0])
            for doc_id in doc_ids:
                del self._records[doc_id]
                for path in (self.pdf_path(doc_id), *self._artifact_paths(doc_id)):
                    if os.path.exists(path):
                        os.remove(path)
            self._persist_locked()

    # -- payloads --------------------------------------------------------

    def pdf_path(self, doc_id: str) -> str:
        return os.path.join(self.pdf_dir, doc_id + ".pdf")

    def put_pdf(self, pdf_bytes: bytes) -> str:
        doc_id = doc_id_for(pdf_bytes)
        path = self.pdf_path(doc_id)
        if not os.path.exists(path):
            tmp = path + ".tmp"
            with open(tmp, "wb") as fh:
                fh.write(pdf_bytes)
            os.replace(tmp, path)
        return doc_id

    def read_pdf(self, doc_id: str) -> bytes:
        self.get(doc_id)
        with open(self.pdf_path(doc_id), "rb") as fh:
            return fh.read()

    def _artifact_paths(self, doc_id: str):
        return [
            os.path.join(self.artifact_dir, "%s.%s.json" % (doc_id, name))
            for name in ("structure", "spans", "match")
        ]

    def write_artifact(self, doc_id: str, name: str, payload) -> None:
        path = os.path.join(self.artifact_dir, "%s.%s.json" % (doc_id, name))
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False)
        os.replace(tmp, path)

    def read_artifact(self, doc_id: str, name: str):
        path = os.path.join(self.artifact_dir, "%s.%s.json" % (doc_id, name))
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
