"""Citation marker detection and resolution against the reference list."""

from __future__ import annotations

import re

from ..pdfparse.model import Diagnostic
from ..structure.model import Reference, StructuredDoc
from .model import AuthorSpan, CitationSpan

_BRACKET_RE = re.compile(r"\[(\d+(?:\s*[,–—-]\s*\d+)*)\]")
_NUM_RE = re.compile(r"\d+")
_RANGE_RE = re.compile(r"(\d+)\s*[–—-]\s*(\d+)")
_AUTHOR_YEAR_PAREN_RE = re.compile(
    r"\(([A-Z][\wÀ-ɏ'’-]+)(?:\s+and\s+[A-Z][\w'’-]+|\s+et\s+al\.?)?,?\s+((?:18|19|20|21)\d{2})\)"
)
_AUTHOR_YEAR_NARRATIVE_RE = re.compile(
    r"\b([A-Z][\wÀ-ɏ'’-]+)(?:\s+and\s+[A-Z][\w'’-]+|\s+et\s+al\.?)?\s+\(((?:18|19|20|21)\d{2})\)"
)


def _first_author_surname(ref: Reference) -> str:
    if not ref.authors:
        return ""
    first = ref.authors[0].strip()
    if "," in first:  # "Smith, J."
        return first.split(",", 1)[0].strip()
    words = [w for w in first.split() if not re.fullmatch(r"[A-Z]\.?", w)]
    return words[-1] if words else first.split()[-1]


def detect_citations(sdoc: StructuredDoc) -> list[CitationSpan]:
    """Citation spans over the flattened text, resolved where possible.

    Numeric markers resolve by reference index; author-year markers by
    first-author surname + year. Unresolved markers keep target None and
    add a diagnostic to the document.
    """
    text = sdoc.flat_text
    refs = sdoc.references
    nrefs = len(refs)
    spans: list[CitationSpan] = []

    def add_numeric(num: int, start: int, end: int, marker: str) -> None:
        target = num if 1 <= num <= nrefs else None
        if target is None:
            sdoc.diagnostics.append(
                Diagnostic(
                    "citation-unresolved",
                    None,
                    f"marker {marker} has no reference #{num}",
                )
            )
        spans.append(
            CitationSpan(marker=marker, start=start, end=end, target=target)
        )

    for m in _BRACKET_RE.finditer(text):
        inner = m.group(1)
        base = m.start(1)
        covered: set[int] = set()
        for rng in _RANGE_RE.finditer(inner):
            lo, hi = int(rng.group(1)), int(rng.group(2))
            covered.update(range(rng.start(), rng.end()))
            for num in range(lo, min(hi, lo + 200) + 1):
                add_numeric(num, base + rng.start(), base + rng.end(), m.group(0))
        for nm in _NUM_RE.finditer(inner):
            if nm.start() in covered:
                continue
            add_numeric(
                int(nm.group(0)), base + nm.start(), base + nm.end(), m.group(0)
            )

    by_surname_year = {}
    for ref in refs:
        surname = _first_author_surname(ref).lower()
        if surname and ref.year:
            by_surname_year.setdefault((surname, ref.year), ref.index)
    for pattern in (_AUTHOR_YEAR_PAREN_RE, _AUTHOR_YEAR_NARRATIVE_RE):
        for m in pattern.finditer(text):
            surname, year = m.group(1).lower(), int(m.group(2))
            if any(s.start <= m.start() < s.end for s in spans):
                continue
            target = by_surname_year.get((surname, year))
            if target is None:
                sdoc.diagnostics.append(
                    Diagnostic(
                        "citation-unresolved",
                        None,
                        f"no reference for {m.group(1)} ({year})",
                    )
                )
            spans.append(
                CitationSpan(
                    marker=m.group(0), start=m.start(), end=m.end(), target=target
                )
            )
    spans.sort(key=lambda s: (s.start, s.end))
    return spans


def detect_authors(sdoc: StructuredDoc) -> list[AuthorSpan]:
    """One span per parsed author mention in the document header."""
    return [
        AuthorSpan(name=a.name, start=a.start, end=a.end) for a in sdoc.authors
    ]
