"""PDF parsing: bytes in, positioned unicode text items out.

Supported subset: PDF 1.4-1.7, classic xref tables and xref streams,
FlateDecode/ASCIIHexDecode filters, standard-14 and simple embedded
fonts, Type0 fonts with a /ToUnicode CMap. Coordinates are user-space
units with a bottom-left origin.
"""

from __future__ import annotations

from .content import TextExtractor
from .document import PdfFile, decode_text_string
from .errors import (
    EncryptedUnsupported,
    NotAPdf,
    PageOutOfRange,
    PdfError,
    UnsupportedFeature,
)
from .model import Diagnostic, DocMeta, OutlineNode, Page, ParsedPdf, TextItem
from .outline import read_outline_tree

__all__ = [
    "parse_document",
    "page_text_items",
    "read_outline",
    "ParsedPdf",
    "Page",
    "TextItem",
    "OutlineNode",
    "DocMeta",
    "Diagnostic",
    "PdfError",
    "NotAPdf",
    "EncryptedUnsupported",
    "UnsupportedFeature",
    "PageOutOfRange",
]


def parse_document(data: bytes) -> ParsedPdf:
    """Parse raw PDF bytes into pages of positioned text items.

    Raises NotAPdf, EncryptedUnsupported, or UnsupportedFeature for input
    outside the supported subset. Deterministic for identical input.
    """
    if not data:
        raise NotAPdf("empty input")
    pdf = PdfFile(data)
    diagnostics: list[Diagnostic] = []
    pages: list[Page] = []
    for i, page_dict in enumerate(pdf.page_dicts(), start=1):
        media = pdf.resolve(page_dict.get("MediaBox")) or [0, 0, 612, 792]
        media = [float(pdf.resolve(v)) for v in media]
        width = abs(media[2] - media[0])
        height = abs(media[3] - media[1])
        extractor = TextExtractor(pdf, page_dict, i)
        extractor.run(pdf.page_contents(page_dict))
        diagnostics.extend(extractor.diagnostics)
        pages.append(Page(number=i, width=width, height=height, items=extractor.items))

    info = pdf.info()

    def _info_str(key: str):
        value = pdf.resolve(info.get(key))
        return decode_text_string(value) if isinstance(value, bytes) else None

    meta = DocMeta(
        title=_info_str("Title"),
        author=_info_str("Author"),
        creation_date=_info_str("CreationDate"),
        page_count=len(pages),
    )
    outline = read_outline_tree(pdf, len(pages), diagnostics)
    return ParsedPdf(pages=pages, outline=outline, meta=meta, diagnostics=diagnostics)


def page_text_items(doc: ParsedPdf, page: int) -> list[TextItem]:
    """Text items of a page (1-based). Raises PageOutOfRange."""
    if not 1 <= page <= doc.page_count:
        raise PageOutOfRange(f"page {page} not in [1, {doc.page_count}]")
    return list(doc.pages[page - 1].items)


def read_outline(doc: ParsedPdf) -> list[OutlineNode]:
    """The parsed outline tree; empty when the document has none."""
    return doc.outline
