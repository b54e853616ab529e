"""Service configuration: JSON file + environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

ENV_PREFIX = "SCIREADER_"


@dataclass
class ServiceConfig:
    data_dir: str = "./scireader-data"
    host: str = "127.0.0.1"
    port: int = 8571
    translate_provider: str = "stub"
    max_upload_bytes: int = 50 * 1024 * 1024
    fetch_timeout: float = 30.0
    translate_max_chars: int = 5000
    doi_fixtures: dict = field(default_factory=dict)  # doi -> pdf url
    live_doi: bool = False
    live_connectors: bool = False
    preload_corpus: bool = False  # load the bundled search fixtures when empty
    stage_timeout: float = 120.0

    @classmethod
    def load(cls, path: str | None = None) -> "ServiceConfig":
        cfg = cls()
        if path:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            for key, value in data.items():
                if not hasattr(cfg, key):
                    raise ValueError("unknown config key %r" % key)
                setattr(cfg, key, value)
        cfg.apply_env(os.environ)
        return cfg

    def apply_env(self, env) -> None:
        for key in (
            "data_dir", "host", "translate_provider",
        ):
            value = env.get(ENV_PREFIX + key.upper())
            if value is not None:
                setattr(self, key, value)
        for key in ("port", "max_upload_bytes", "translate_max_chars"):
            value = env.get(ENV_PREFIX + key.upper())
            if value is not None:
                setattr(self, key, int(value))
        for key in ("fetch_timeout", "stage_timeout"):
            value = env.get(ENV_PREFIX + key.upper())
            if value is not None:
                setattr(self, key, float(value))
        for key in ("live_doi", "live_connectors", "preload_corpus"):
            value = env.get(ENV_PREFIX + key.upper())
            if value is not None:
                setattr(self, key, value.lower() in ("1", "true", "yes", "on"))
