#!/usr/bin/env python3
"""Record API responses from the portal service into UI test fixtures.

Run from the repository root:  python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

REPO = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO / "tests"))
FIXTURE_DIR = REPO / "frontend" / "tests" / "fixtures"

from conftest import FIXTURES, MINI_CCS, MINI_DESCRIPTORS, make_portal  # noqa: E402
from ontobib.service.app import create_app  # noqa: E402


def main() -> None:
    tmp = Path(tempfile.mkdtemp(prefix="ontobib-fixtures-"))
    (tmp / "ccs.txt").write_text(MINI_CCS, encoding="utf-8")
    (tmp / "desc.txt").write_text(MINI_DESCRIPTORS, encoding="utf-8")
    portal = make_portal(tmp)
    portal.ingest_ccs(tmp / "ccs.txt")
    portal.ingest_descriptors(tmp / "desc.txt")
    portal.ingest_corpus(FIXTURES / "corpus50.bib", "bibtex")
    portal.translate()
    client = TestClient(create_app(portal))

    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    recorded: dict[str, dict] = {}
    for focus in ("ROOT", "I", "I.3", "I.3.3"):
        for lang in ("en", "fr"):
            response = client.get(f"/api/v1/ontology/node/{focus}",
                                  params={"radius": 1, "lang": lang})
            response.raise_for_status()
            recorded[f"navigate {focus} {lang}"] = response.json()
            name = f"navigate_{focus.replace('.', '_')}_{lang}.json"
            (FIXTURE_DIR / name).write_text(
                json.dumps(response.json(), indent=2, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )

    search = client.get("/api/v1/search", params={"q": "picture image generation", "lang": "en"})
    search.raise_for_status()
    (FIXTURE_DIR / "search_picture_en.json").write_text(
        json.dumps(search.json(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8",
    )

    proposal = client.post("/api/v1/translations/proposals", json={
        "node": "I.3.3", "language": "fr",
        "text": "rendu non-photorealiste", "submitter": "ui-user",
    })
    proposal.raise_for_status()
    (FIXTURE_DIR / "proposal_created.json").write_text(
        json.dumps(proposal.json(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8",
    )
    print(f"wrote {len(list(FIXTURE_DIR.glob('*.json')))} fixtures to {FIXTURE_DIR}")


if __name__ == "__main__":
    main()
