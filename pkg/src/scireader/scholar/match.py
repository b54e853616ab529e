"""Matching an opened document to its index record, and author lookups."""

from __future__ import annotations

from dataclasses import dataclass

from ..textutils import normalize_title, strip_diacritics, title_similarity
from .index import IndexSnapshot
from .records import PaperRecord
from .tokenize import tokenize

TITLE_WEIGHT = 0.7
AUTHOR_WEIGHT = 0.3
MATCH_THRESHOLD = 0.85


@dataclass(frozen=True)
class MatchResult:
    record: PaperRecord | None
    score: float
    candidates: tuple  # top (record, score) pairs, best first


def normalize_person(name: str) -> list[str]:
    """Name tokens, lowercased and reordered to given-names-then-surname."""
    name = strip_diacritics(name).lower().replace(".", " ")
    if "," in name:
        surname, _, given = name.partition(",")
        name = given + " " + surname
    return [t for t in name.replace(",", " ").split() if t]


def names_match(a: str, b: str) -> bool:
    """Initial-aware comparison: 'A. Zhang' matches 'Alice Zhang'."""
    ta, tb = normalize_person(a), normalize_person(b)
    if not ta or not tb or ta[-1] != tb[-1]:
        return False
    for ga, gb in zip(ta[:-1], tb[:-1]):
        if ga == gb:
            continue
        if len(ga) == 1 or len(gb) == 1:
            if ga[0] != gb[0]:
                return False
        else:
            return False
    return True


def author_overlap(doc_authors, rec_authors) -> float:
    if not doc_authors or not rec_authors:
        return 0.0
    remaining = list(rec_authors)
    hits = 0
    for name in doc_authors:
        for i, other in enumerate(remaining):
            if names_match(name, other):
                hits += 1
                del remaining[i]
                break
    return hits / max(len(doc_authors), len(rec_authors))


def match_score(title: str, authors, rec: PaperRecord) -> float:
    return TITLE_WEIGHT * title_similarity(title, rec.title) + AUTHOR_WEIGHT * author_overlap(
        authors, rec.authors
    )


def match_paper(sdoc, snap: IndexSnapshot, threshold: float = MATCH_THRESHOLD) -> MatchResult:
    """Best record by 0.7·title-similarity + 0.3·author-overlap, if above threshold.

    `sdoc` needs only `.title` and `.authors`, so both structured documents
    and lightweight stand-ins work.
    """
    title = sdoc.title or ""
    raw_authors = getattr(sdoc, "authors", []) or []
    # structured documents carry author mentions; index records carry strings
    authors = [getattr(a, "name", a) for a in raw_authors]
    query_tokens = set(tokenize(normalize_title(title)))
    scored = []
    for doc_id in sorted(snap.records):
        rec = snap.records[doc_id]
        # cheap prefilter: a candidate must share a title token
        rec_tokens = snap.title_tokens.get(doc_id)
        if rec_tokens is None:
            rec_tokens = frozenset(tokenize(rec.title))
        if query_tokens and query_tokens.isdisjoint(rec_tokens):
            continue
        scored.append((match_score(title, authors, rec), rec))
    scored.sort(key=lambda pair: (-pair[0], pair[1].id))
    candidates = tuple((rec, score) for score, rec in scored[:3])
    if scored and scored[0][0] >= threshold:
        return MatchResult(record=scored[0][1], score=scored[0][0], candidates=candidates)
    best = scored[0][0] if scored else 0.0
    return MatchResult(record=None, score=best, candidates=candidates)


def author_works(name: str, snap: IndexSnapshot) -> list[PaperRecord]:
    """All records listing the author (initial-aware), newest first."""
    if not name.strip():
        return []
    hits = [
        snap.records[i]
        for i in sorted(snap.records)
        if any(names_match(name, a) for a in snap.records[i].authors)
    ]
    hits.sort(key=lambda r: r.date, reverse=True)
    return hits
