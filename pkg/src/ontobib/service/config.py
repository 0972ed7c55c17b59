"""Portal configuration: JSON file with env-var overrides for deployment."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ontobib.metaquery import DEFAULT_MAX_KEYWORDS, SCHOLAR_TEMPLATE, ProviderTemplate

ENV_PORT = "ONTOBIB_PORT"
ENV_DATA_DIR = "ONTOBIB_DATA_DIR"

# Illustrative defaults; production deployments pin their own templates in
# the config file since external query syntaxes drift.
DEFAULT_PROVIDERS = [
    {"name": "acm", "url_template": "https://dl.acm.org/action/doSearch?AllField={keywords}"},
    {"name": "dblp", "url_template": "https://dblp.org/search?q={keywords}"},
    {"name": "csbib", "url_template": "https://liinwww.ira.uka.de/csbib?query={keywords}"},
]


@dataclass
class PortalConfig:
    port: int = 8040
    data_dir: Path = Path("data")
    page_size: int = 20
    committee: list[str] = field(default_factory=list)
    providers: list[ProviderTemplate] = field(default_factory=list)
    scholar_template: str = SCHOLAR_TEMPLATE
    proximity_threshold: int = 1
    orphan_min_cluster: int = 3
    orphan_min_shared: int = 2
    glossary_path: Path | None = None
    ccs_path: Path | None = None
    descriptors_path: Path | None = None
    feed_title: str = "Translation proposals"
    feed_link: str = "http://localhost/"
    feed_description: str = "Community translation proposals awaiting committee review"
    static_dir: Path | None = None

    @classmethod
    def load(cls, path: str | Path | None = None) -> "PortalConfig":
        """Read configuration; missing file means pure defaults.

        ONTOBIB_PORT and ONTOBIB_DATA_DIR override the file."""
        raw: dict = {}
        if path is not None and Path(path).exists():
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        providers = [
            ProviderTemplate(
                name=entry["name"],
                url_template=entry["url_template"],
                joiner=entry.get("joiner", "+"),
                max_keywords=entry.get("max_keywords", DEFAULT_MAX_KEYWORDS),
            )
            for entry in raw.get("providers", DEFAULT_PROVIDERS)
        ]
        thresholds = raw.get("thresholds", {})
        config = cls(
            port=int(raw.get("port", cls.port)),
            data_dir=Path(raw.get("data_dir", "data")),
            page_size=int(raw.get("page_size", cls.page_size)),
            committee=list(raw.get("committee", [])),
            providers=providers,
            scholar_template=raw.get("scholar_template", SCHOLAR_TEMPLATE),
            proximity_threshold=int(thresholds.get("proximity", 1)),
            orphan_min_cluster=int(thresholds.get("orphan_min_cluster", 3)),
            orphan_min_shared=int(thresholds.get("orphan_min_shared", 2)),
            glossary_path=Path(raw["glossary_path"]) if raw.get("glossary_path") else None,
            ccs_path=Path(raw["ccs_path"]) if raw.get("ccs_path") else None,
            descriptors_path=Path(raw["descriptors_path"]) if raw.get("descriptors_path") else None,
            feed_title=raw.get("feed", {}).get("title", cls.feed_title),
            feed_link=raw.get("feed", {}).get("link", cls.feed_link),
            feed_description=raw.get("feed", {}).get("description", cls.feed_description),
            static_dir=Path(raw["static_dir"]) if raw.get("static_dir") else None,
        )
        if os.environ.get(ENV_PORT):
            config.port = int(os.environ[ENV_PORT])
        if os.environ.get(ENV_DATA_DIR):
            config.data_dir = Path(os.environ[ENV_DATA_DIR])
        return config
