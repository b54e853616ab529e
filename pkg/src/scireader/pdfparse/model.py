"""Data model for parsed PDF documents.

Coordinates are PDF user space with the origin at the bottom-left of the
page; all downstream span geometry inherits this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class TextItem:
    """One positioned text run emitted by a single show-text operator."""

    text: str
    bbox: tuple[float, float, float, float]  # x0, y0, x1, y1
    font_size: float
    font_name: str


@dataclass
class Page:
    number: int  # 1-based
    width: float
    height: float
    items: list[TextItem] = field(default_factory=list)


@dataclass
class OutlineNode:
    title: str
    page: Optional[int] = None  # 1-based target page
    children: list["OutlineNode"] = field(default_factory=list)


@dataclass
class DocMeta:
    title: Optional[str] = None
    author: Optional[str] = None
    creation_date: Optional[str] = None
    page_count: int = 0


@dataclass
class Diagnostic:
    code: str
    page: Optional[int] = None
    detail: str = ""


@dataclass
class ParsedPdf:
    pages: list[Page]
    outline: list[OutlineNode]
    meta: DocMeta
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def page_count(self) -> int:
        return len(self.pages)
