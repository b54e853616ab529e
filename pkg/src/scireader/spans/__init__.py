"""Span annotation: typed terms, citations, authors, and page localization."""

from __future__ import annotations

from ..pdfparse.model import ParsedPdf
from ..structure.model import StructuredDoc
from .citations import detect_authors, detect_citations
from .localize import RangeOutOfBounds, localize, localize_header
from .model import (
    TERM_TYPES,
    AuthorSpan,
    CitationSpan,
    SpanBundle,
    TermSpan,
)
from .tagger import (
    LexiconTagger,
    TermLexicon,
    TermTagger,
    normalize_surface,
    occurrences,
    tag_terms,
)

__all__ = [
    "tag_terms",
    "detect_citations",
    "detect_authors",
    "localize",
    "localize_header",
    "occurrences",
    "annotate",
    "TermLexicon",
    "LexiconTagger",
    "TermTagger",
    "TermSpan",
    "CitationSpan",
    "AuthorSpan",
    "SpanBundle",
    "TERM_TYPES",
    "RangeOutOfBounds",
    "normalize_surface",
]


def annotate(
    doc: ParsedPdf, sdoc: StructuredDoc, lexicon: TermLexicon | None = None
) -> SpanBundle:
    """Tag terms, citations, and authors, with page boxes resolved."""
    lexicon = lexicon or TermLexicon.bundled()
    terms = tag_terms(sdoc, lexicon)
    for t in terms:
        t.boxes = localize(t.start, t.end, sdoc, doc)
    citations = detect_citations(sdoc)
    for c in citations:
        c.boxes = localize(c.start, c.end, sdoc, doc)
    authors = detect_authors(sdoc)
    for a in authors:
        a.boxes = localize_header(a.start, a.end, sdoc, doc)
    return SpanBundle(terms=terms, citations=citations, authors=authors)
