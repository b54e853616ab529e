"""Rule-based utterance understanding for the conference assistant.

Intent precedence on ambiguous input: attribute question > conference list
> search handoff > unknown. All rules are per-language regex/keyword tables,
so classification is deterministic and auditable.
"""

from __future__ import annotations

import calendar
import re
from dataclasses import dataclass

from .kb import ATTRIBUTES, ConferenceKb

_CJK_RE = re.compile(r"[一-鿿぀-ヿ]")

# attribute synonym tables; order fixes priority when several match
# (specific nouns before generic question words)
_EN_ATTR = [
    ("impact_factor", re.compile(r"impact\s+factor", re.I)),
    ("impact_factor", re.compile(r"\bIF\b")),
    ("deadline", re.compile(r"\bdeadline\b|\bdue\s+date\b|\bsubmission\s+date\b", re.I)),
    ("level", re.compile(r"\blevel\b|\brank(?:ing)?\b", re.I)),
    ("host_place", re.compile(r"\bwhere\b|\bplace\b|\blocation\b|\bcity\b", re.I)),
    ("host_date", re.compile(r"\bwhen\b|\bwhat\s+dates?\b|\bhost\s+date\b", re.I)),
]
_ZH_ATTR = [
    ("impact_factor", re.compile(r"影响因子")),
    ("deadline", re.compile(r"截稿|截止|投稿日期|投稿时间")),
    ("level", re.compile(r"级别|等级|档次")),
    ("host_place", re.compile(r"在哪|哪里|地点|举办地|什么地方")),
    ("host_date", re.compile(r"什么时候|何时|时间|日期")),
]

_EN_LIST_RE = re.compile(r"\b(?:what|which|list|any|show)\b.*\bconferences?\b", re.I)
_ZH_LIST_RE = re.compile(r"哪些会议|什么会议|会议列表|有哪些.*会议|会议有哪些")

_EN_HANDOFF_RES = [
    re.compile(r"\b(?:find|search(?:\s+for)?|look\s+for)\s+(?:papers?|articles?|literature)\s+(?:about|on|for)\s+(.+)", re.I),
    re.compile(r"\bsearch\s+(?:for\s+)?(.+)", re.I),
]
_ZH_HANDOFF_RES = [
    re.compile(r"(?:查找|搜索|检索)(?:一下)?(?:关于)?(.+?)(?:的论文|的文献|相关论文)?$"),
]

_EN_MONTHS = {name.lower(): i for i, name in enumerate(calendar.month_name) if name}
_EN_MONTH_RE = re.compile(
    r"\b(%s)\b(?:\s*,?\s*(\d{4}))?" % "|".join(_EN_MONTHS), re.I
)
_EN_YEAR_RE = re.compile(r"\b((?:19|20)\d{2})\b")
_ZH_NUM_MONTH_RE = re.compile(r"(?:(\d{4})\s*年)?\s*(\d{1,2})\s*月")
_ZH_YEAR_RE = re.compile(r"(\d{4})\s*年")
_ZH_MONTH_WORDS = {
    "一": 1, "二": 2, "三": 3, "四": 4, "五": 5, "六": 6,
    "七": 7, "八": 8, "九": 9, "十": 10, "十一": 11, "十二": 12,
}
_ZH_WORD_MONTH_RE = re.compile(r"(十[一二]?|[一二三四五六七八九])月")

_EN_PLACE_RE = re.compile(r"\bin\s+([A-Z][A-Za-z]+(?:[ ,]\s*[A-Z][A-Za-z]+)*)")
_ZH_PLACE_RE = re.compile(r"在(.+?)(?:举办|召开|举行)")
_LEVEL_RE = re.compile(r"(?:level|rank)\s+([ABC])\b|([ABC])\s*类", re.I)
_PRONOUN_RE = re.compile(r"\bit\b", re.I)


@dataclass(frozen=True)
class Intent:
    kind: str  # attribute | conference_list | search_handoff | unknown
    language: str  # en | zh
    attribute: str | None = None
    venue: str | None = None  # canonical record name
    pronoun: bool = False
    date_from: str | None = None
    date_to: str | None = None
    place: str | None = None
    level: str | None = None
    keywords: str | None = None

    def __post_init__(self):
        if self.attribute is not None and self.attribute not in ATTRIBUTES:
            raise ValueError("unknown attribute %r" % (self.attribute,))


def detect_language(text: str) -> str:
    return "zh" if _CJK_RE.search(text) else "en"


def _month_window(year: int, month: int):
    last = calendar.monthrange(year, month)[1]
    return f"{year:04d}-{month:02d}-01", f"{year:04d}-{month:02d}-{last:02d}"


def _parse_dates(text: str, lang: str):
    if lang == "zh":
        m = _ZH_NUM_MONTH_RE.search(text)
        year = None
        ym = _ZH_YEAR_RE.search(text)
        if ym:
            year = int(ym.group(1))
        if m and m.group(2):
            y = int(m.group(1)) if m.group(1) else year
            if y:
                return _month_window(y, int(m.group(2)))
        w = _ZH_WORD_MONTH_RE.search(text)
        if w and year:
            return _month_window(year, _ZH_MONTH_WORDS[w.group(1)])
        if year:
            return f"{year:04d}-01-01", f"{year:04d}-12-31"
        return None, None
    m = _EN_MONTH_RE.search(text)
    if m:
        month = _EN_MONTHS[m.group(1).lower()]
        year = int(m.group(2)) if m.group(2) else None
        if year is None:
            ym = _EN_YEAR_RE.search(text)
            year = int(ym.group(1)) if ym else None
        if year:
            return _month_window(year, month)
    ym = _EN_YEAR_RE.search(text)
    if ym:
        year = int(ym.group(1))
        return f"{year:04d}-01-01", f"{year:04d}-12-31"
    return None, None


def _find_attribute(text: str, lang: str) -> str | None:
    table = _ZH_ATTR if lang == "zh" else _EN_ATTR
    for attr, pattern in table:
        if pattern.search(text):
            return attr
    return None


def _find_place(text: str, lang: str) -> str | None:
    pattern = _ZH_PLACE_RE if lang == "zh" else _EN_PLACE_RE
    m = pattern.search(text)
    if not m:
        return None
    place = m.group(1).strip(" ?？。.!")
    if lang == "en" and place.split()[0].lower() in _EN_MONTHS:
        return None
    return place or None


def parse_utterance(text: str, state, kb: ConferenceKb) -> Intent:
    """Classify one utterance. Unparseable input yields kind "unknown"."""
    if not text.strip():
        raise ValueError("utterance must be non-empty")
    lang = detect_language(text)
    venue_rec = kb.find_mention(text)
    venue = venue_rec.name if venue_rec else None
    pronoun = bool(_PRONOUN_RE.search(text)) or "它" in text
    attribute = _find_attribute(text, lang)
    list_hit = (_ZH_LIST_RE if lang == "zh" else _EN_LIST_RE).search(text)

    if attribute and (venue or pronoun or not list_hit):
        return Intent(
            kind="attribute",
            language=lang,
            attribute=attribute,
            venue=venue,
            pronoun=pronoun,
        )
    if list_hit:
        date_from, date_to = _parse_dates(text, lang)
        level_m = _LEVEL_RE.search(text)
        level = (level_m.group(1) or level_m.group(2)).upper() if level_m else None
        return Intent(
            kind="conference_list",
            language=lang,
            date_from=date_from,
            date_to=date_to,
            place=_find_place(text, lang),
            level=level,
        )
    for pattern in _ZH_HANDOFF_RES if lang == "zh" else _EN_HANDOFF_RES:
        m = pattern.search(text)
        if m:
            keywords = m.group(1).strip(" ?？。.!\"'")
            if keywords:
                return Intent(kind="search_handoff", language=lang, keywords=keywords)
    return Intent(kind="unknown", language=lang, venue=venue, pronoun=pronoun)


def resolve_coref(intent: Intent, state) -> Intent:
    """Fill a missing venue from the dialogue state's last mentioned venue."""
    if intent.kind == "attribute" and intent.venue is None and state.last_venue:
        return Intent(
            kind=intent.kind,
            language=intent.language,
            attribute=intent.attribute,
            venue=state.last_venue,
            pronoun=intent.pronoun,
        )
    return intent
