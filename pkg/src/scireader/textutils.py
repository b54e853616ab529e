"""Shared text normalization and string-distance helpers."""

from __future__ import annotations

import re
import unicodedata

_WS_RE = re.compile(r"\s+")
_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)


def strip_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def normalize_title(title: str) -> str:
    """Lowercase, strip punctuation and diacritics, collapse whitespace."""
    t = strip_diacritics(title).lower()
    t = _PUNCT_RE.sub(" ", t)
    return _WS_RE.sub(" ", t).strip()


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def title_similarity(a: str, b: str) -> float:
    """1 - normalized Levenshtein over normalized titles, in [0, 1]."""
    na, nb = normalize_title(a), normalize_title(b)
    if not na and not nb:
        return 1.0
    denom = max(len(na), len(nb))
    if denom == 0:
        return 0.0
    return 1.0 - levenshtein(na, nb) / denom


def normalize_ws(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()
