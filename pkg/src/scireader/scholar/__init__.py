"""Academic metadata: ingestion, BM25 search, paper matching, extensions."""

from .encyclopedia import (
    EncyclopediaAnswer,
    EncyclopediaProvider,
    Entry,
    FixtureProvider,
    ProviderTimeout,
    WikipediaProvider,
    encyclopedia,
)
from .index import (
    EmptyQuery,
    IndexSnapshot,
    Query,
    ResultEntry,
    ResultPage,
    build_snapshot,
    record_year,
    search,
)
from .match import (
    MATCH_THRESHOLD,
    MatchResult,
    author_overlap,
    author_works,
    match_paper,
    names_match,
    normalize_person,
)
from .records import (
    RECORD_SCHEMA,
    RESOURCE_KINDS,
    PaperRecord,
    Resource,
    SchemaError,
    record_from_dict,
)
from .store import IngestReport, ScholarStore, bundled_corpus_lines
from .tokenize import porter_stem, tokenize

__all__ = [
    "PaperRecord",
    "Resource",
    "SchemaError",
    "RECORD_SCHEMA",
    "RESOURCE_KINDS",
    "record_from_dict",
    "ScholarStore",
    "IngestReport",
    "bundled_corpus_lines",
    "Query",
    "ResultPage",
    "ResultEntry",
    "IndexSnapshot",
    "EmptyQuery",
    "build_snapshot",
    "search",
    "record_year",
    "match_paper",
    "MatchResult",
    "MATCH_THRESHOLD",
    "author_works",
    "author_overlap",
    "names_match",
    "normalize_person",
    "encyclopedia",
    "EncyclopediaAnswer",
    "EncyclopediaProvider",
    "Entry",
    "FixtureProvider",
    "WikipediaProvider",
    "ProviderTimeout",
    "tokenize",
    "porter_stem",
]
