"""Logical document structuring: layout blocks, roles, references, anchors."""

from __future__ import annotations

from ..pdfparse.model import Diagnostic, ParsedPdf
from .anchors import locate_anchors
from .blocks import LayoutConfig, assemble_blocks
from .classify import EmptyDocument, classify_structure
from .model import (
    Anchor,
    AuthorMention,
    Block,
    Reference,
    Section,
    StructuredDoc,
)
from .references import NoReferenceSection, parse_reference, segment_references

__all__ = [
    "assemble_blocks",
    "classify_structure",
    "segment_references",
    "parse_reference",
    "locate_anchors",
    "build_structured_doc",
    "LayoutConfig",
    "StructuredDoc",
    "Section",
    "Reference",
    "Anchor",
    "AuthorMention",
    "Block",
    "EmptyDocument",
    "NoReferenceSection",
]


def build_structured_doc(doc: ParsedPdf, cfg: LayoutConfig | None = None) -> StructuredDoc:
    """Full structuring pipeline: blocks -> roles -> references -> anchors."""
    cfg = cfg or LayoutConfig()
    blocks = assemble_blocks(doc, cfg)
    sdoc = classify_structure(blocks, doc.meta, cfg)
    try:
        raws = segment_references(sdoc)
        sdoc.references = [parse_reference(raw, i + 1) for i, raw in enumerate(raws)]
    except NoReferenceSection:
        sdoc.diagnostics.append(
            Diagnostic("no-reference-section", None, "reference features degraded")
        )
    sdoc.anchors = locate_anchors(doc, sdoc, cfg)
    return sdoc
