"""Caption anchors (figures, tables, equations) for quick-jump navigation."""

from __future__ import annotations

import re

from ..pdfparse.model import Diagnostic, ParsedPdf
from .blocks import LayoutConfig, build_lines
from .model import Anchor

_CAPTION_RE = re.compile(
    r"^\s*(Figure|Fig\.|Table|Equation|Eq\.)\s*(\d+)\s*[:.]", re.IGNORECASE
)
_KIND = {"figure": "figure", "fig.": "figure", "table": "table", "equation": "equation", "eq.": "equation"}
_LABEL_WORD = {"figure": "Figure", "table": "Table", "equation": "Equation"}


def locate_anchors(
    doc: ParsedPdf, sdoc=None, cfg: LayoutConfig | None = None
) -> list[Anchor]:
    """One anchor per caption line; first occurrence wins per kind+label."""
    cfg = cfg or LayoutConfig()
    anchors: list[Anchor] = []
    seen: set[tuple[str, str]] = set()
    diags: list[Diagnostic] = []
    for page in doc.pages:
        for line in build_lines(page, cfg):
            m = _CAPTION_RE.match(line.text)
            if not m:
                continue
            kind = _KIND[m.group(1).lower()]
            label = f"{_LABEL_WORD[kind]} {m.group(2)}"
            key = (kind, label)
            if key in seen:
                diags.append(
                    Diagnostic("duplicate-anchor", page.number, label)
                )
                continue
            seen.add(key)
            anchors.append(
                Anchor(kind=kind, label=label, page=page.number, bbox=line.bbox)
            )
    if sdoc is not None:
        sdoc.diagnostics.extend(diags)
    return anchors
