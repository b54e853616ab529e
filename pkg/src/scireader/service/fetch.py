"""Fetching PDFs from URLs and resolving DOIs to PDF URLs."""

from __future__ import annotations

import urllib.error
import urllib.request
from typing import Protocol

from .errors import DoiUnresolved, FetchFailed, NotAPdfUpload, TooLarge

_CHUNK = 64 * 1024


def fetch_pdf(url: str, max_bytes: int, timeout: float) -> bytes:
    """Download with size/time limits; the payload must sniff as a PDF.

    file:// URLs are accepted so tests and demos stay offline.
    """
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            chunks = []
            total = 0
            while True:
                chunk = resp.read(_CHUNK)
                if not chunk:
                    break
                total += len(chunk)
                if total > max_bytes:
                    raise TooLarge("download exceeds %d bytes" % max_bytes)
                chunks.append(chunk)
    except TooLarge:
        raise
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise FetchFailed("could not fetch %s" % url, detail=str(exc))
    data = b"".join(chunks)
    if not data.startswith(b"%PDF"):
        raise NotAPdfUpload("fetched content is not a PDF", detail=url)
    return data


class DoiResolver(Protocol):
    def resolve(self, doi: str) -> str: ...


class FixtureDoiResolver:
    """Offline resolver backed by a configured doi -> url map."""

    def __init__(self, mapping: dict):
        self.mapping = dict(mapping)

    def resolve(self, doi: str) -> str:
        url = self.mapping.get(doi)
        if url is None:
            raise DoiUnresolved("no PDF known for DOI %s" % doi)
        return url


class LiveDoiResolver:
    """Follows the standard DOI redirect endpoint. Not used in tests."""

    def __init__(self, base_url: str = "https://doi.org/", timeout: float = 10.0):
        self.base_url = base_url
        self.timeout = timeout

    def resolve(self, doi: str) -> str:
        req = urllib.request.Request(self.base_url + doi, method="HEAD")
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                return resp.url
        except (urllib.error.URLError, OSError) as exc:
            raise DoiUnresolved("DOI %s did not resolve" % doi, detail=str(exc))
