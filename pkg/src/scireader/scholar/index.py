"""Inverted index with weighted-field BM25 ranking.

Scoring contract (frozen so an external scorer can reproduce it exactly):

    w(t, d)   = W_title * tf_title(t, d) + W_abstract * tf_abstract(t, d)
    len(d)    = W_title * |title tokens| + W_abstract * |abstract tokens|
    idf(t)    = ln(1 + (N - df + 0.5) / (df + 0.5))     df = docs with w > 0
    score(d)  = sum over *distinct* query tokens t of
                idf(t) * w * (k1 + 1) / (w + k1 * (1 - b + b * len(d)/avgdl))

with k1 = 1.2, b = 0.75, W_title = 2.0, W_abstract = 1.0. Only documents
containing at least one query token are returned. Ties break by doc id
ascending.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .records import PaperRecord
from .tokenize import tokenize

K1 = 1.2
B = 0.75
TITLE_WEIGHT = 2.0
ABSTRACT_WEIGHT = 1.0

SORTS = ("relevance", "date", "citations")


class EmptyQuery(ValueError):
    """Search refused: no keywords and no filters."""


@dataclass(frozen=True)
class Query:
    keywords: str = ""
    year_from: int | None = None
    year_to: int | None = None
    venue: str | None = None
    source: str | None = None
    sort: str = "relevance"
    page: int = 1
    page_size: int = 10

    def __post_init__(self):
        if self.page < 1:
            raise ValueError("page must be >= 1")
        if not 1 <= self.page_size <= 100:
            raise ValueError("page size must be in [1, 100]")
        if self.sort not in SORTS:
            raise ValueError("sort must be one of %s" % (SORTS,))

    @property
    def has_filters(self) -> bool:
        return any(
            v is not None for v in (self.year_from, self.year_to, self.venue, self.source)
        )


@dataclass(frozen=True)
class ResultEntry:
    record: PaperRecord
    score: float


@dataclass(frozen=True)
class ResultPage:
    total: int
    page: int
    page_size: int
    entries: tuple


@dataclass
class IndexSnapshot:
    """Immutable search snapshot: records plus BM25 statistics."""

    records: dict  # id -> PaperRecord
    postings: dict = field(default_factory=dict)  # token -> [(id, tf_t, tf_a)]
    doc_len: dict = field(default_factory=dict)
    avgdl: float = 0.0
    title_tokens: dict = field(default_factory=dict)  # id -> frozenset, for matching

    @property
    def doc_count(self) -> int:
        return len(self.records)


def build_snapshot(records: dict) -> IndexSnapshot:
    postings: dict = {}
    doc_len: dict = {}
    title_tokens: dict = {}
    for doc_id in sorted(records):
        rec = records[doc_id]
        title_tf = Counter(tokenize(rec.title))
        title_tokens[doc_id] = frozenset(title_tf)
        abstract_tf = Counter(tokenize(rec.abstract))
        doc_len[doc_id] = (
            TITLE_WEIGHT * sum(title_tf.values())
            + ABSTRACT_WEIGHT * sum(abstract_tf.values())
        )
        for token in sorted(set(title_tf) | set(abstract_tf)):
            postings.setdefault(token, []).append(
                (doc_id, title_tf.get(token, 0), abstract_tf.get(token, 0))
            )
    avgdl = sum(doc_len.values()) / len(doc_len) if doc_len else 0.0
    return IndexSnapshot(
        records=dict(records),
        postings=postings,
        doc_len=doc_len,
        avgdl=avgdl,
        title_tokens=title_tokens,
    )


def record_year(rec: PaperRecord) -> int | None:
    head = rec.date[:4]
    return int(head) if head.isdigit() else None


def _passes_filters(rec: PaperRecord, q: Query) -> bool:
    if q.year_from is not None or q.year_to is not None:
        year = record_year(rec)
        if year is None:
            return False
        if q.year_from is not None and year < q.year_from:
            return False
        if q.year_to is not None and year > q.year_to:
            return False
    if q.venue is not None and rec.venue.lower() != q.venue.lower():
        return False
    if q.source is not None and rec.source != q.source:
        return False
    return True


def _bm25_scores(tokens, snap: IndexSnapshot, allowed) -> dict:
    scores: dict = {}
    n = snap.doc_count
    for token in sorted(set(tokens)):
        plist = snap.postings.get(token)
        if not plist:
            continue
        df = len(plist)
        idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
        for doc_id, tf_t, tf_a in plist:
            if doc_id not in allowed:
                continue
            w = TITLE_WEIGHT * tf_t + ABSTRACT_WEIGHT * tf_a
            dl = snap.doc_len[doc_id]
            norm = K1 * (1.0 - B + B * dl / snap.avgdl) if snap.avgdl else K1
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * w * (K1 + 1.0) / (w + norm)
    return scores


def search(q: Query, snap: IndexSnapshot) -> ResultPage:
    """Filter, rank, and paginate. Filters apply before ranking."""
    if not q.keywords.strip() and not q.has_filters:
        raise EmptyQuery("provide keywords or at least one filter")
    allowed = {i for i, r in snap.records.items() if _passes_filters(r, q)}
    if q.keywords.strip():
        scores = _bm25_scores(tokenize(q.keywords), snap, allowed)
        matched = scores
    else:
        matched = {i: 0.0 for i in allowed}
    if q.sort == "relevance":
        ordered = sorted(matched, key=lambda i: (-matched[i], i))
    elif q.sort == "date":
        ordered = sorted(matched)  # id ascending, then stable date descending
        ordered.sort(key=lambda i: snap.records[i].date, reverse=True)
    else:
        ordered = sorted(
            matched, key=lambda i: (-(snap.records[i].citations or 0), i)
        )
    start = (q.page - 1) * q.page_size
    entries = tuple(
        ResultEntry(record=snap.records[i], score=matched[i])
        for i in ordered[start : start + q.page_size]
    )
    return ResultPage(total=len(ordered), page=q.page, page_size=q.page_size, entries=entries)
