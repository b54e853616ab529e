"""Paper metadata records and the "scholar-record/v1" JSON-lines schema."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace

from ..textutils import normalize_title

RECORD_SCHEMA = "scholar-record/v1"

RESOURCE_KINDS = ("video", "blog", "code", "presentation")


class SchemaError(ValueError):
    """A record that does not satisfy the scholar-record/v1 schema."""


@dataclass(frozen=True)
class Resource:
    kind: str
    url: str
    label: str = ""


@dataclass(frozen=True)
class PaperRecord:
    id: str
    title: str
    authors: tuple = ()
    date: str = ""  # ISO-8601, may be partial ("2020" or "2020-05")
    venue: str = ""
    doi: str | None = None
    abstract: str = ""
    source: str = ""
    resources: tuple = ()
    citations: int | None = None

    def to_json(self) -> dict:
        data = {
            "schema": RECORD_SCHEMA,
            "id": self.id,
            "title": self.title,
            "authors": list(self.authors),
            "date": self.date,
            "venue": self.venue,
            "abstract": self.abstract,
            "source": self.source,
            "resources": [
                {"kind": r.kind, "url": r.url, "label": r.label}
                for r in self.resources
            ],
        }
        if self.doi:
            data["doi"] = self.doi
        if self.citations is not None:
            data["citations"] = self.citations
        return data


def record_from_dict(data: dict) -> PaperRecord:
    """Validate one decoded JSON object. Raises SchemaError with a reason."""
    if not isinstance(data, dict):
        raise SchemaError("record is not an object")
    title = data.get("title")
    if not title or not isinstance(title, str) or not title.strip():
        raise SchemaError("missing title")
    authors = data.get("authors", [])
    if not isinstance(authors, list) or any(not isinstance(a, str) for a in authors):
        raise SchemaError("authors must be a list of strings")
    doi = data.get("doi")
    if doi is not None and not isinstance(doi, str):
        raise SchemaError("doi must be a string")
    citations = data.get("citations")
    if citations is not None and (not isinstance(citations, int) or citations < 0):
        raise SchemaError("citations must be a non-negative integer")
    resources = []
    for res in data.get("resources", []):
        if not isinstance(res, dict) or "kind" not in res or "url" not in res:
            raise SchemaError("resource needs kind and url")
        if res["kind"] not in RESOURCE_KINDS:
            raise SchemaError("unknown resource kind %r" % (res["kind"],))
        resources.append(
            Resource(kind=res["kind"], url=res["url"], label=res.get("label", ""))
        )
    rec_id = data.get("id") or derive_id(data)
    if not isinstance(rec_id, str):
        raise SchemaError("id must be a string")
    return PaperRecord(
        id=rec_id,
        title=title.strip(),
        authors=tuple(a.strip() for a in authors if a.strip()),
        date=str(data.get("date", "") or ""),
        venue=str(data.get("venue", "") or ""),
        doi=doi,
        abstract=str(data.get("abstract", "") or ""),
        source=str(data.get("source", "") or ""),
        resources=tuple(resources),
        citations=citations,
    )


def derive_id(data: dict) -> str:
    """Stable id when a dump omits one: hash of DOI, else title + first author."""
    doi = data.get("doi")
    if doi:
        basis = "doi:" + doi.lower()
    else:
        authors = data.get("authors") or []
        first = authors[0] if authors else ""
        basis = "t:" + normalize_title(data.get("title", "")) + "|" + first.lower()
    return "p" + hashlib.sha1(basis.encode("utf-8")).hexdigest()[:16]


def dedup_key(rec: PaperRecord):
    if rec.doi:
        return ("doi", rec.doi.lower())
    first = rec.authors[0].lower() if rec.authors else ""
    return ("ta", normalize_title(rec.title), first)


def merge_records(base: PaperRecord, other: PaperRecord) -> PaperRecord:
    """Merge a duplicate into an existing record.

    The existing record wins on conflicting scalar fields (source priority =
    ingestion order); missing fields are filled from the newcomer and the
    resource lists are unioned.
    """
    seen = {(r.kind, r.url) for r in base.resources}
    extra = [r for r in other.resources if (r.kind, r.url) not in seen]
    return replace(
        base,
        date=base.date or other.date,
        venue=base.venue or other.venue,
        doi=base.doi or other.doi,
        abstract=base.abstract or other.abstract,
        resources=base.resources + tuple(extra),
        citations=base.citations if base.citations is not None else other.citations,
    )


def parse_jsonl(lines) -> list:
    """Yield (line_no, record-or-SchemaError) for every non-blank line."""
    out = []
    for no, line in enumerate(lines, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            out.append((no, SchemaError("invalid JSON: %s" % exc)))
            continue
        try:
            out.append((no, record_from_dict(data)))
        except SchemaError as exc:
            out.append((no, exc))
    return out
