"""Reference-list segmentation and field parsing (grammar cascade).

A learned parser can replace `parse_reference` behind the same signature;
the cascade here is: numbered grammar -> author-year grammar -> fallback
(raw string with whatever fields the generic patterns find).
"""

from __future__ import annotations

import re

from .model import Reference, RefLine


class NoReferenceSection(Exception):
    """The document has no recognizable reference section (degrades, not fails)."""


_MARKER_RE = re.compile(r"^\s*(?:\[(\d+)\]|(\d+)\.)\s+")
_DOI_RE = re.compile(r"\b10\.\d{4,9}/[^\s,;\"'<>]+")
_YEAR_RE = re.compile(r"\b(18\d{2}|19\d{2}|20\d{2}|21\d{2})\b")


def segment_references(doc) -> list[str]:
    """Split the reference section into raw per-entry strings.

    Accepts a StructuredDoc (uses its retained reference-section lines).
    Entries are found by bracket/number markers when present, otherwise by
    the section's hanging-indent profile.
    """
    lines: list[RefLine] = list(doc.reference_lines)
    if not lines:
        raise NoReferenceSection("no reference section was identified")
    marker_count = sum(1 for ln in lines if _MARKER_RE.match(ln.text))
    entries: list[list[str]] = []
    if marker_count >= 2:
        current: list[str] = []
        for ln in lines:
            if _MARKER_RE.match(ln.text):
                if current:
                    entries.append(current)
                current = [ln.text]
            elif current:
                current.append(ln.text)
            else:
                current = [ln.text]
        if current:
            entries.append(current)
    else:
        # hanging indent: entries start at the leftmost indent level
        min_x = min(ln.x0 for ln in lines)
        tol = 2.0
        current = []
        for ln in lines:
            if ln.x0 <= min_x + tol and current:
                entries.append(current)
                current = [ln.text]
            else:
                current.append(ln.text)
        if current:
            entries.append(current)
    return [" ".join(part.strip() for part in entry).strip() for entry in entries]


def _split_segments(text: str) -> list[str]:
    """Split on sentence periods, keeping initials and common abbreviations."""
    segments: list[str] = []
    buf: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        buf.append(ch)
        if ch == ".":
            prev = text[i - 1] if i > 0 else ""
            prev2 = text[i - 2] if i > 1 else ""
            # an initial: single uppercase letter preceded by start/space
            is_initial = prev.isupper() and (prev2 in ("", " ", ".", "-"))
            tail = "".join(buf).rstrip(".").rsplit(" ", 1)[-1].lower()
            is_abbrev = tail in {"et", "al", "proc", "vol", "pp", "no", "eds", "ed", "jr", "st"}
            nxt = text[i + 1] if i + 1 < n else ""
            if not is_initial and not is_abbrev and (nxt == " " or nxt == ""):
                segments.append("".join(buf).strip())
                buf = []
        i += 1
    if "".join(buf).strip():
        segments.append("".join(buf).strip())
    return [s for s in segments if s]


_AUTHOR_TOKEN_RE = re.compile(
    r"^[A-Z][\w'’.-]*\.?$|^(?:van|von|de|del|der|da|di|la|le|el)$", re.UNICODE
)


def _looks_like_authors(segment: str) -> bool:
    seg = segment.rstrip(".")
    parts = re.split(r",| and |&", seg)
    parts = [p.strip() for p in parts if p.strip()]
    if not parts or len(seg) > 200:
        return False
    good = 0
    for p in parts:
        words = p.split()
        if 1 <= len(words) <= 4 and all(_AUTHOR_TOKEN_RE.match(w) for w in words):
            good += 1
    return good >= max(1, int(0.6 * len(parts)))


def _parse_author_list(segment: str) -> list[str]:
    seg = segment.strip().rstrip(".")
    # restore trailing initial dot eaten by rstrip ("A. Lee." -> "A. Lee")
    parts = re.split(r",\s*| and\s+|&\s*", seg)
    names = []
    for p in parts:
        p = p.strip().rstrip(",")
        if not p or p.lower() in ("et al", "et al.", "others"):
            continue
        if _AUTHOR_TOKEN_RE.match(p.split()[0]) or len(p.split()) <= 4:
            names.append(p if not p.endswith(".") or re.search(r"\b[A-Z]\.$", p) else p)
    return [n for n in names if n]


_SURNAME_INITIALS_RE = re.compile(
    r"^(?:[A-Z][\w'’-]+,\s*(?:[A-Z]\.[\s-]*)+(?:and\s+|,\s*)?)+"
)

_VENUE_HINT_RE = re.compile(
    r"^(In |Proceedings|Proc\.|Journal|Transactions|IEEE|ACM|arXiv|CoRR)"
    r"|\b(Conference|Workshop|Journal|Transactions|Proceedings|arXiv)\b"
)


def parse_reference(raw: str, index: int = 0) -> Reference:
    """Parse one raw reference string into structured fields.

    Total: always returns a Reference; fields that cannot be read stay absent.
    """
    ref = Reference(index=index, raw=raw)
    text = raw.strip()
    m = _MARKER_RE.match(text)
    if m:
        text = text[m.end() :]
    doi = _DOI_RE.search(raw)
    if doi:
        ref.doi = doi.group(0).rstrip(".),;")
    years = [y for y in _YEAR_RE.findall(raw)]
    # last standalone year token, restricted to a sane publication window
    plausible = [int(y) for y in years if 1800 <= int(y) <= 2100]
    if plausible:
        ref.year = plausible[-1]

    segments = _split_segments(text)
    if not segments:
        return ref
    # "Surname, I. and Surname, I. Title..." keeps the title inside the first
    # segment (the initial's period does not split); peel the author prefix off
    m = _SURNAME_INITIALS_RE.match(segments[0])
    if m and len(segments[0][m.end() :].split()) >= 2:
        rest = segments[0][m.end() :].strip()
        segments = [m.group(0).strip(), rest] + segments[1:]
    pos = 0
    if _looks_like_authors(segments[0]):
        ref.authors = _parse_author_list(segments[0])
        pos = 1
    # numbered/ACL style: "Authors. 2020. Title. In Venue."
    if pos < len(segments) and re.fullmatch(r"(18|19|20|21)\d{2}\.?", segments[pos]):
        pos += 1
    title = None
    venue = None
    for seg in segments[pos:]:
        stripped = seg.rstrip(".")
        if _VENUE_HINT_RE.search(stripped) and venue is None:
            venue = re.sub(r"^In\s+", "", stripped)
            # venue segments often end with ", 2020" or page ranges
            venue = re.sub(r",\s*(pages?|pp\.)[^,]*$", "", venue)
            venue = re.sub(r",\s*(18|19|20|21)\d{2}$", "", venue).strip()
        elif title is None and not re.fullmatch(r"[\d\s:pp.,()-]+", stripped):
            title = stripped
    # nothing but a bare string parsed: report no fields rather than guesses
    if not ref.authors and ref.year is None and venue is None and ref.doi is None:
        title = None
    ref.title = title
    ref.venue = venue
    return ref
