"""Logical-document model: the structured output of layout analysis.

The flattened text (title, abstract, headings, body paragraphs in reading
order) is the substrate every span annotation indexes into; `charmap`
maps each of its character offsets back to the source text item on a
page, so offsets can always be resolved to page geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..pdfparse.model import Diagnostic, TextItem

# charmap entry: (page number, item index on that page, offset inside item)
CharSource = tuple[int, int, int]

SCHEMA = "structured-doc/v1"


@dataclass
class Line:
    page: int
    items: list[TextItem]
    item_indices: list[int]  # indices into the page's item list
    text: str
    sources: list[CharSource]  # one per char of text
    x0: float
    y: float  # vertical center
    font_size: float

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        return (
            min(i.bbox[0] for i in self.items),
            min(i.bbox[1] for i in self.items),
            max(i.bbox[2] for i in self.items),
            max(i.bbox[3] for i in self.items),
        )


@dataclass
class Block:
    page: int
    lines: list[Line]
    column: int = 0
    role: str = "other"  # title/author/abstract/heading/body/reference/other

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        boxes = [ln.bbox for ln in self.lines]
        return (
            min(b[0] for b in boxes),
            min(b[1] for b in boxes),
            max(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )


@dataclass
class AuthorMention:
    name: str
    start: int  # char range within header_text
    end: int


@dataclass
class Section:
    heading: str
    level: int
    paragraphs: list[str] = field(default_factory=list)
    paragraph_ranges: list[tuple[int, int]] = field(default_factory=list)
    heading_range: tuple[int, int] = (0, 0)


@dataclass
class Reference:
    index: int
    raw: str
    authors: list[str] = field(default_factory=list)
    title: Optional[str] = None
    venue: Optional[str] = None
    year: Optional[int] = None
    doi: Optional[str] = None


@dataclass
class Anchor:
    kind: str  # figure | table | equation
    label: str  # e.g. "Figure 2"
    page: int
    bbox: tuple[float, float, float, float]


@dataclass
class RefLine:
    """One layout line of the reference section (kept for segmentation)."""

    text: str
    x0: float
    page: int


@dataclass
class StructuredDoc:
    title: str
    authors: list[AuthorMention]
    header_text: str
    header_charmap: list[CharSource]
    abstract: str
    abstract_range: tuple[int, int]
    sections: list[Section]
    references: list[Reference]
    anchors: list[Anchor]
    flat_text: str
    charmap: list[CharSource]
    reference_lines: list[RefLine] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def title_range(self) -> tuple[int, int]:
        return (0, len(self.title))

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "title": self.title,
            "authors": [
                {"name": a.name, "start": a.start, "end": a.end} for a in self.authors
            ],
            "header_text": self.header_text,
            "header_charmap": [list(c) for c in self.header_charmap],
            "abstract": self.abstract,
            "abstract_range": list(self.abstract_range),
            "sections": [
                {
                    "heading": s.heading,
                    "level": s.level,
                    "paragraphs": s.paragraphs,
                    "paragraph_ranges": [list(r) for r in s.paragraph_ranges],
                    "heading_range": list(s.heading_range),
                }
                for s in self.sections
            ],
            "references": [
                {
                    "index": r.index,
                    "raw": r.raw,
                    "authors": r.authors,
                    "title": r.title,
                    "venue": r.venue,
                    "year": r.year,
                    "doi": r.doi,
                }
                for r in self.references
            ],
            "anchors": [
                {"kind": a.kind, "label": a.label, "page": a.page, "bbox": list(a.bbox)}
                for a in self.anchors
            ],
            "flat_text": self.flat_text,
            "charmap": [list(c) for c in self.charmap],
            "diagnostics": [
                {"code": d.code, "page": d.page, "detail": d.detail}
                for d in self.diagnostics
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StructuredDoc":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        return cls(
            title=data["title"],
            authors=[
                AuthorMention(a["name"], a["start"], a["end"]) for a in data["authors"]
            ],
            header_text=data["header_text"],
            header_charmap=[tuple(c) for c in data["header_charmap"]],
            abstract=data["abstract"],
            abstract_range=tuple(data["abstract_range"]),
            sections=[
                Section(
                    heading=s["heading"],
                    level=s["level"],
                    paragraphs=s["paragraphs"],
                    paragraph_ranges=[tuple(r) for r in s["paragraph_ranges"]],
                    heading_range=tuple(s["heading_range"]),
                )
                for s in data["sections"]
            ],
            references=[
                Reference(
                    index=r["index"],
                    raw=r["raw"],
                    authors=r["authors"],
                    title=r.get("title"),
                    venue=r.get("venue"),
                    year=r.get("year"),
                    doi=r.get("doi"),
                )
                for r in data["references"]
            ],
            anchors=[
                Anchor(a["kind"], a["label"], a["page"], tuple(a["bbox"]))
                for a in data["anchors"]
            ],
            flat_text=data["flat_text"],
            charmap=[tuple(c) for c in data["charmap"]],
            diagnostics=[
                Diagnostic(d["code"], d.get("page"), d.get("detail", ""))
                for d in data.get("diagnostics", [])
            ],
        )
