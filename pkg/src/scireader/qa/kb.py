"""Conference/journal knowledge base ("conference-kb/v1")."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources as importlib_resources

KB_SCHEMA = "conference-kb/v1"

ATTRIBUTES = ("host_date", "host_place", "deadline", "level", "impact_factor")


@dataclass(frozen=True)
class ConferenceRecord:
    name: str
    aliases: tuple = ()
    kind: str = "conference"  # conference | journal
    place: str | None = None
    date_start: str | None = None
    date_end: str | None = None
    deadline: str | None = None
    level: str | None = None
    impact_factor: float | None = None

    def attribute(self, attr: str):
        if attr == "host_date":
            if self.date_start and self.date_end:
                return (self.date_start, self.date_end)
            return None
        if attr == "host_place":
            return self.place
        return getattr(self, attr)


class ConferenceKb:
    def __init__(self, records):
        self.records = list(records)
        self._by_alias = {}
        for rec in self.records:
            for alias in (rec.name, *rec.aliases):
                self._by_alias[alias.lower()] = rec

    @classmethod
    def bundled(cls) -> "ConferenceKb":
        raw = (
            importlib_resources.files("scireader.data")
            .joinpath("conference_kb.json")
            .read_text(encoding="utf-8")
        )
        data = json.loads(raw)
        if data.get("schema") != KB_SCHEMA:
            raise ValueError("unexpected KB schema: %r" % data.get("schema"))
        records = [
            ConferenceRecord(
                name=r["name"],
                aliases=tuple(r.get("aliases", ())),
                kind=r.get("kind", "conference"),
                place=r.get("place"),
                date_start=r.get("date_start"),
                date_end=r.get("date_end"),
                deadline=r.get("deadline"),
                level=r.get("level"),
                impact_factor=r.get("impact_factor"),
            )
            for r in data["records"]
        ]
        return cls(records)

    def resolve(self, text_lower: str) -> ConferenceRecord | None:
        """Exact alias/name lookup, case-insensitive."""
        return self._by_alias.get(text_lower.lower())

    def find_mention(self, text: str) -> ConferenceRecord | None:
        """First alias or full name mentioned in free text (longest alias wins)."""
        lowered = text.lower()
        best = None
        best_len = 0
        for alias, rec in self._by_alias.items():
            idx = lowered.find(alias)
            if idx < 0:
                continue
            end = idx + len(alias)
            if alias.isascii():
                # word boundary against ASCII neighbours only, so "ACL的..."
                # still counts as a mention in Chinese text
                before = lowered[idx - 1] if idx > 0 else " "
                after = lowered[end] if end < len(lowered) else " "
                if (before.isascii() and before.isalnum()) or (
                    after.isascii() and after.isalnum()
                ):
                    continue
            if len(alias) > best_len:
                best, best_len = rec, len(alias)
        return best

    def list_matching(self, date_from=None, date_to=None, place=None, level=None):
        """Brute-force scan used for list answers (and as its own oracle shape)."""
        out = []
        for rec in self.records:
            if rec.kind != "conference":
                continue
            if date_from or date_to:
                if not rec.date_start or not rec.date_end:
                    continue
                if date_to and rec.date_start > date_to:
                    continue
                if date_from and rec.date_end < date_from:
                    continue
            if place and (not rec.place or place.lower() not in rec.place.lower()):
                continue
            if level and rec.level != level:
                continue
            out.append(rec)
        return out
