"""Span types: typed terms, citation markers, author mentions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

SCHEMA = "spans/v1"

TERM_TYPES = (
    "Task",
    "Method",
    "Metric",
    "Material",
    "Generic",
    "OtherScientificTerm",
)
# the sixth label is often written "Other" in running text; accept it on input
TYPE_ALIASES = {"Other": "OtherScientificTerm"}

PageBox = tuple[int, tuple[float, float, float, float]]


@dataclass
class TermSpan:
    surface: str
    type: str
    start: int
    end: int
    boxes: list[PageBox] = field(default_factory=list)
    context: str = ""


@dataclass
class CitationSpan:
    marker: str
    start: int
    end: int
    boxes: list[PageBox] = field(default_factory=list)
    target: Optional[int] = None  # 1-based reference index, None = unresolved


@dataclass
class AuthorSpan:
    name: str
    start: int  # within the header region
    end: int
    boxes: list[PageBox] = field(default_factory=list)


@dataclass
class SpanBundle:
    terms: list[TermSpan]
    citations: list[CitationSpan]
    authors: list[AuthorSpan]

    def to_json(self) -> dict:
        def box(b: PageBox) -> dict:
            return {"page": b[0], "bbox": list(b[1])}

        return {
            "schema": SCHEMA,
            "terms": [
                {
                    "surface": t.surface,
                    "type": t.type,
                    "start": t.start,
                    "end": t.end,
                    "boxes": [box(b) for b in t.boxes],
                    "context": t.context,
                }
                for t in self.terms
            ],
            "citations": [
                {
                    "marker": c.marker,
                    "start": c.start,
                    "end": c.end,
                    "boxes": [box(b) for b in c.boxes],
                    "target": c.target,
                }
                for c in self.citations
            ],
            "authors": [
                {
                    "name": a.name,
                    "start": a.start,
                    "end": a.end,
                    "boxes": [box(b) for b in a.boxes],
                }
                for a in self.authors
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpanBundle":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")

        def boxes(items):
            return [(b["page"], tuple(b["bbox"])) for b in items]

        return cls(
            terms=[
                TermSpan(
                    surface=t["surface"],
                    type=t["type"],
                    start=t["start"],
                    end=t["end"],
                    boxes=boxes(t["boxes"]),
                    context=t.get("context", ""),
                )
                for t in data["terms"]
            ],
            citations=[
                CitationSpan(
                    marker=c["marker"],
                    start=c["start"],
                    end=c["end"],
                    boxes=boxes(c["boxes"]),
                    target=c.get("target"),
                )
                for c in data["citations"]
            ],
            authors=[
                AuthorSpan(
                    name=a["name"],
                    start=a["start"],
                    end=a["end"],
                    boxes=boxes(a["boxes"]),
                )
                for a in data["authors"]
            ],
        )
