"""Term tagging: lexicon longest-match plus pattern rules.

The tagger is deliberately pluggable: anything with a
`tag(sdoc) -> list[TermSpan]` method can replace `LexiconTagger` (for
example a served model), as long as its output passes the same
non-overlap and type invariants.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Protocol

from ..structure.model import StructuredDoc
from .model import TERM_TYPES, TYPE_ALIASES, TermSpan


def normalize_surface(surface: str) -> str:
    return " ".join(surface.lower().split())


@dataclass
class TermLexicon:
    entries: dict[str, str]  # normalized surface -> type
    source: str = ""

    def __post_init__(self):
        cleaned = {}
        for key, typ in self.entries.items():
            typ = TYPE_ALIASES.get(typ, typ)
            if typ not in TERM_TYPES:
                raise ValueError(f"unknown term type {typ!r} for {key!r}")
            cleaned[normalize_surface(key)] = typ
        self.entries = cleaned

    @classmethod
    def bundled(cls) -> "TermLexicon":
        with resources.files("scireader.data").joinpath("term_lexicon.json").open(
            "r", encoding="utf-8"
        ) as f:
            data = json.load(f)
        return cls(entries=data["entries"], source=data.get("source", "bundled"))


class TermTagger(Protocol):
    def tag(self, sdoc: StructuredDoc) -> list[TermSpan]: ...


_ABBREV_RE = re.compile(r"\(([A-Z][A-Za-z0-9]{1,9})\)")
_METRIC_TOKEN_RE = re.compile(r"\b(?:[A-Za-z]+\d*-score|F\d(?:\.\d)?)\b")


def _sentence_around(text: str, start: int, end: int) -> str:
    left = max(
        text.rfind(". ", 0, start), text.rfind("\n", 0, start), text.rfind("? ", 0, start)
    )
    right_candidates = [
        i for i in (text.find(". ", end), text.find("\n", end), text.find("? ", end)) if i >= 0
    ]
    right = min(right_candidates) + 1 if right_candidates else len(text)
    return text[left + 1 : right].strip()


def _abbrev_matches_expansion(abbrev: str, expansion: str) -> bool:
    initials = "".join(w[0] for w in expansion.split() if w)
    letters = "".join(c for c in abbrev if c.isalpha())
    return letters.lower() == initials.lower()


@dataclass
class LexiconTagger:
    lexicon: TermLexicon
    _index: dict[str, list[tuple[str, str]]] = field(init=False, repr=False)

    def __post_init__(self):
        index: dict[str, list[tuple[str, str]]] = {}
        for key, typ in self.lexicon.entries.items():
            index.setdefault(key[:2], []).append((key, typ))
        for bucket in index.values():
            bucket.sort(key=lambda kv: -len(kv[0]))  # longest match first
        self._index = index

    def tag(self, sdoc: StructuredDoc) -> list[TermSpan]:
        text = sdoc.flat_text
        norm = text.lower().replace("\n", " ")
        spans: list[TermSpan] = []
        occupied: list[tuple[int, int]] = []

        def free(start: int, end: int) -> bool:
            return all(end <= s or start >= e for s, e in occupied)

        def is_boundary(pos: int) -> bool:
            return pos == 0 or pos == len(norm) or not norm[pos - 1 : pos].isalnum()

        def boundary_after(pos: int) -> bool:
            return pos >= len(norm) or not norm[pos : pos + 1].isalnum()

        pos = 0
        n = len(norm)
        while pos < n:
            if not is_boundary(pos) or not norm[pos].isalnum():
                pos += 1
                continue
            matched = None
            for key, typ in self._index.get(norm[pos : pos + 2], ()):
                end = pos + len(key)
                if norm.startswith(key, pos) and boundary_after(end) and free(pos, end):
                    matched = (key, typ, end)
                    break
            if matched:
                key, typ, end = matched
                spans.append(
                    TermSpan(
                        surface=text[pos:end],
                        type=typ,
                        start=pos,
                        end=end,
                        context=_sentence_around(text, pos, end),
                    )
                )
                occupied.append((pos, end))
                pos = end
            else:
                pos += 1

        # rule 1: a parenthesized abbreviation inherits its expansion's type
        aliases: dict[str, str] = {}
        for m in _ABBREV_RE.finditer(text):
            abbrev = m.group(1)
            for span in spans:
                gap = text[span.end : m.start()]
                if gap.strip() == "" and _abbrev_matches_expansion(abbrev, span.surface):
                    aliases[abbrev] = span.type
                    break
        for abbrev, typ in sorted(aliases.items()):
            for m in re.finditer(rf"\b{re.escape(abbrev)}\b", text):
                if free(m.start(), m.end()):
                    spans.append(
                        TermSpan(
                            surface=m.group(0),
                            type=typ,
                            start=m.start(),
                            end=m.end(),
                            context=_sentence_around(text, m.start(), m.end()),
                        )
                    )
                    occupied.append((m.start(), m.end()))

        # rule 2: score-style tokens are metrics
        for m in _METRIC_TOKEN_RE.finditer(text):
            if free(m.start(), m.end()):
                spans.append(
                    TermSpan(
                        surface=m.group(0),
                        type="Metric",
                        start=m.start(),
                        end=m.end(),
                        context=_sentence_around(text, m.start(), m.end()),
                    )
                )
                occupied.append((m.start(), m.end()))

        spans.sort(key=lambda s: s.start)
        return spans


def tag_terms(sdoc: StructuredDoc, lexicon: TermLexicon) -> list[TermSpan]:
    """Non-overlapping typed term spans over the flattened text."""
    return LexiconTagger(lexicon).tag(sdoc)


def occurrences(
    surface: str, sdoc: StructuredDoc, spans: list[TermSpan]
) -> list[TermSpan]:
    """All term spans with the same normalized surface, in document order."""
    want = normalize_surface(surface)
    return sorted(
        (s for s in spans if normalize_surface(s.surface) == want),
        key=lambda s: s.start,
    )
