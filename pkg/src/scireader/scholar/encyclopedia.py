"""Encyclopedia lookups: provider interface, offline fixture, live client."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources as importlib_resources
from typing import Protocol


class ProviderTimeout(Exception):
    """The provider did not answer in time."""


@dataclass(frozen=True)
class Entry:
    title: str
    summary: str
    url: str


@dataclass(frozen=True)
class EncyclopediaAnswer:
    status: str  # exact | partial | none
    entries: tuple = ()
    diagnostic: str | None = None


class EncyclopediaProvider(Protocol):
    def lookup(self, title: str) -> Entry | None: ...

    def search(self, prefix: str) -> list: ...


class FixtureProvider:
    """Offline provider backed by a bundled JSON fixture file."""

    def __init__(self, entries=None):
        if entries is None:
            raw = (
                importlib_resources.files("scireader.data")
                .joinpath("encyclopedia.json")
                .read_text(encoding="utf-8")
            )
            entries = [Entry(**e) for e in json.loads(raw)["entries"]]
        self.entries = list(entries)

    def lookup(self, title: str) -> Entry | None:
        want = title.strip().lower()
        for entry in self.entries:
            if entry.title.lower() == want:
                return entry
        return None

    def search(self, prefix: str) -> list:
        want = prefix.strip().lower()
        if not want:
            return []
        return sorted(
            (e for e in self.entries if want in e.title.lower()),
            key=lambda e: e.title,
        )


class WikipediaProvider:
    """Live provider against the Wikipedia REST API. Not used by tests."""

    def __init__(self, base_url="https://en.wikipedia.org", timeout=5.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout

    def lookup(self, title: str) -> Entry | None:
        import requests

        try:
            resp = requests.get(
                f"{self.base_url}/api/rest_v1/page/summary/{title}",
                timeout=self.timeout,
            )
        except requests.RequestException as exc:
            raise ProviderTimeout(str(exc)) from exc
        if resp.status_code != 200:
            return None
        data = resp.json()
        return Entry(
            title=data.get("title", title),
            summary=data.get("extract", ""),
            url=data.get("content_urls", {}).get("desktop", {}).get("page", ""),
        )

    def search(self, prefix: str) -> list:
        import requests

        try:
            resp = requests.get(
                f"{self.base_url}/w/rest.php/v1/search/title",
                params={"q": prefix, "limit": 5},
                timeout=self.timeout,
            )
            resp.raise_for_status()
        except requests.RequestException as exc:
            raise ProviderTimeout(str(exc)) from exc
        return [
            Entry(
                title=page.get("title", ""),
                summary=page.get("description") or "",
                url=f"{self.base_url}/wiki/{page.get('key', '')}",
            )
            for page in resp.json().get("pages", [])
        ]


def encyclopedia(term: str, provider: EncyclopediaProvider) -> EncyclopediaAnswer:
    """Exact title hit, else up to five partial hits, else none.

    Provider failures degrade to status "none" with a diagnostic; they are
    never raised to the caller.
    """
    if not term.strip():
        raise ValueError("term must be non-empty")
    try:
        exact = provider.lookup(term)
        if exact is not None:
            return EncyclopediaAnswer(status="exact", entries=(exact,))
        hits = list(provider.search(term))[:5]
    except ProviderTimeout as exc:
        return EncyclopediaAnswer(status="none", diagnostic="provider timeout: %s" % exc)
    except Exception as exc:  # provider bugs degrade, never block reading
        return EncyclopediaAnswer(status="none", diagnostic="provider error: %s" % exc)
    if hits:
        return EncyclopediaAnswer(status="partial", entries=tuple(hits))
    return EncyclopediaAnswer(status="none")
