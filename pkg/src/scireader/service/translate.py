"""Translation routing: pluggable providers, deterministic stub, result cache."""

from __future__ import annotations

import hashlib
import json
import re
import threading
from dataclasses import dataclass
from importlib import resources as importlib_resources
from typing import Protocol

from .errors import BadRequest, ProviderUnavailable, TextTooLong


@dataclass(frozen=True)
class Translation:
    text: str
    provider: str
    cached: bool = False


class TranslationProvider(Protocol):
    id: str

    def translate(self, text: str, source: str, target: str) -> str: ...


class StubProvider:
    """Dictionary substitution with pass-through, bundled for offline use."""

    id = "stub"

    def __init__(self, pairs=None):
        if pairs is None:
            raw = (
                importlib_resources.files("scireader.data")
                .joinpath("stub_translations.json")
                .read_text(encoding="utf-8")
            )
            pairs = json.loads(raw)["pairs"]
        self.pairs = pairs

    def translate(self, text: str, source: str, target: str) -> str:
        table = self.pairs.get(f"{source}-{target}", {})
        if not table:
            return text
        # longest phrases first so multi-word entries win over their parts
        keys = sorted(table, key=len, reverse=True)
        pattern = "|".join(re.escape(k) for k in keys)
        if all(k.isascii() for k in keys):
            pattern = r"\b(?:%s)\b" % pattern
        else:
            pattern = "(?:%s)" % pattern
        return re.sub(
            pattern, lambda m: table[m.group(0).lower()], text, flags=re.IGNORECASE
        )


class TranslationService:
    def __init__(self, providers, default_provider: str, max_chars: int = 5000):
        self.providers = {p.id: p for p in providers}
        self.default_provider = default_provider
        self.max_chars = max_chars
        self._cache: dict = {}
        self._lock = threading.Lock()

    def translate(
        self, text: str, target: str, source: str = "en", provider: str | None = None
    ) -> Translation:
        if not text:
            raise BadRequest("text must be non-empty")
        if not target:
            raise BadRequest("target language required")
        if len(text) > self.max_chars:
            raise TextTooLong("text exceeds %d characters" % self.max_chars)
        provider = provider or self.default_provider
        impl = self.providers.get(provider)
        if impl is None:
            raise BadRequest("unknown provider %r" % provider, detail=sorted(self.providers))
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        key = (provider, source, target, digest)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return Translation(text=hit, provider=provider, cached=True)
        try:
            result = impl.translate(text, source, target)
        except Exception as exc:
            raise ProviderUnavailable("provider %s failed" % provider, detail=str(exc))
        with self._lock:
            self._cache[key] = result
        return Translation(text=result, provider=provider, cached=False)
