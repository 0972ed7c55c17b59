"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Scenario tests run end to end through the HTTP API.

The full-taxonomy ingestion check uses the bundled fixture unless
ONTOBIB_CCS_FILE / ONTOBIB_DESCRIPTORS_FILE point at operator-supplied
files (e.g. the complete 1998 flat text).
"""

from __future__ import annotations

import itertools
import os
import random
import time
import tracemalloc
from contextlib import contextmanager
from pathlib import Path
from urllib.parse import unquote

from fastapi.testclient import TestClient

from ontobib.corpus import (
    ArticleRecord,
    PseudoCorpus,
    build_snapshot,
    classify,
    incremental_update,
    load_snapshot,
    parse_bibtex,
    parse_dblp_xml,
)
from ontobib.metaquery import ProviderTemplate, generate
from ontobib.ontology import (
    KIND_DESCRIPTOR,
    ROOT_ID,
    attach_descriptors,
    ensure_general_bucket,
    export_snapshot,
    import_snapshot,
    load_ccs,
    load_descriptors,
    parent_code,
)
from ontobib.service.app import create_app
from ontobib.service.state import Portal
from ontobib.translation import TranslationRegistry
from oracle_classify import OracleOntology

from conftest import FIXTURES, MINI_CCS, MINI_DESCRIPTORS, make_portal


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def _seed_portal(tmp_path, **overrides) -> Portal:
    (tmp_path / "ccs.txt").write_text(MINI_CCS, encoding="utf-8")
    (tmp_path / "desc.txt").write_text(MINI_DESCRIPTORS, encoding="utf-8")
    portal = make_portal(tmp_path, **overrides)
    portal.ingest_ccs(tmp_path / "ccs.txt")
    portal.ingest_descriptors(tmp_path / "desc.txt")
    portal.ingest_corpus(FIXTURES / "corpus50.bib", "bibtex")
    return portal


def test_ccs_ingestion_integrity():
    with criterion("ccs-ingestion-integrity"):
        ccs_path = Path(os.environ.get("ONTOBIB_CCS_FILE", FIXTURES / "ccs98.txt"))
        descriptors_path = Path(os.environ.get("ONTOBIB_DESCRIPTORS_FILE",
                                               FIXTURES / "descriptors98.txt"))
        started = time.perf_counter()
        ontology = load_ccs(ccs_path.read_text(encoding="utf-8"))
        ontology = attach_descriptors(
            ontology, load_descriptors(descriptors_path.read_text(encoding="utf-8")),
        )
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"ingestion took {elapsed:.2f}s"

        roots = [n for n in ontology.nodes.values() if n.id == ROOT_ID]
        assert len(roots) == 1
        for node in ontology.nodes.values():
            if node.id == ROOT_ID or node.kind == KIND_DESCRIPTOR:
                continue
            parent = ontology.parent_of(node.id)
            assert parent == parent_code(node.id), node.id
            if parent != ROOT_ID:
                assert node.id.startswith(parent + "."), node.id
        assert "C++" in ontology.descriptors_of("D.3.2")
        ontology.validate()


def test_npr_clir_scenario(tmp_path):
    with criterion("npr-clir-scenario"):
        portal = _seed_portal(tmp_path)
        client = TestClient(create_app(portal))
        query = {"q": "rendu non photo-réaliste", "lang": "fr"}

        before = client.get("/api/v1/search", params=query).json()
        assert before["found"] is False
        assert before["message"] == ('"rendu non photo-réaliste" does not exist '
                                     "in French in the ACM ontology")

        created = client.post("/api/v1/translations/entries", json={
            "node": "I.3.3", "language": "fr", "text": "rendu non-photorealiste",
        })
        assert created.status_code == 201

        after = client.get("/api/v1/search", params=query).json()
        assert after["found"] is True
        assert after["results"][0]["node"] == "I.3.3"

        client.post("/api/v1/translations/entries", json={
            "node": "I.3.3", "language": "fr", "text": "rendu expressif",
        })
        expressive = client.get("/api/v1/search", params={"q": "rendu expressif", "lang": "fr"}).json()
        assert expressive["found"] and expressive["results"][0]["node"] == "I.3.3"
        still = client.get("/api/v1/search", params=query).json()
        assert still["found"] and still["results"][0]["node"] == "I.3.3"


class _StateMachineOracle:
    """Hand-written transition table for the two-validator workflow."""

    def __init__(self, committee, submitter):
        self.committee = committee
        self.submitter = submitter
        self.proposals = [{"state": "open", "approvals": set()}]

    def apply(self, event) -> str:
        current = self.proposals[-1]
        kind, member = event
        if kind == "resubmit":
            self.proposals.append({"state": "open", "approvals": set()})
            return "ok:open"
        if member not in self.committee:
            return "NotCommitteeMember"
        if current["state"] != "open":
            return "AlreadyClosed"
        if kind == "approve":
            if member == self.submitter:
                return "SelfValidation"
            current["approvals"].add(member)
            if len(current["approvals"]) >= 2:
                current["state"] = "accepted"
            return f"ok:{current['state']}"
        current["state"] = "rejected"
        return "ok:rejected"

    def final_states(self):
        return [p["state"] for p in self.proposals]


def test_two_validator_state_machine(mini_ontology):
    with criterion("two-validator-state-machine"):
        from ontobib.translation import (
            AlreadyClosed, NotCommitteeMember, SelfValidation,
            VERDICT_APPROVE, VERDICT_REJECT,
        )
        committee = {"m1", "m2", "m3"}
        events = [("approve", "m1"), ("approve", "m2"), ("approve", "m3"),
                  ("reject", "m1"), ("resubmit", None)]

        def run_sequence(sequence):
            registry = TranslationRegistry(committee)
            proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "m1", mini_ontology)
            current = proposal.id
            trace = []
            for kind, member in sequence:
                if kind == "resubmit":
                    proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "m1", mini_ontology)
                    current = proposal.id
                    trace.append("ok:open")
                    continue
                verdict = VERDICT_APPROVE if kind == "approve" else VERDICT_REJECT
                try:
                    proposal, _ = registry.validate_proposal(current, member, verdict, mini_ontology)
                    trace.append(f"ok:{proposal.state}")
                except SelfValidation:
                    trace.append("SelfValidation")
                except AlreadyClosed:
                    trace.append("AlreadyClosed")
                except NotCommitteeMember:
                    trace.append("NotCommitteeMember")
            states = [registry.proposals[pid].state
                      for pid in sorted(registry.proposals, key=lambda p: int(p[1:]))]
            return trace, states

        total = 0
        for length in range(0, 5):
            for sequence in itertools.product(events, repeat=length):
                oracle = _StateMachineOracle(committee, "m1")
                expected_trace = [oracle.apply(e) for e in sequence]
                actual_trace, actual_states = run_sequence(sequence)
                assert actual_trace == expected_trace, sequence
                assert actual_states == oracle.final_states(), sequence
                total += 1
        assert total == 1 + 5 + 25 + 125 + 625


def test_classification_oracle_equivalence(ontology30, corpus50_records):
    with criterion("classification-oracle-equivalence"):
        ontology, bucket = ensure_general_bucket(ontology30)
        assert len(ontology30.nodes) == 30
        assert len(corpus50_records) == 50
        oracle = OracleOntology(
            (FIXTURES / "ontology30.txt").read_text(encoding="utf-8"),
            {"C++": ["D.3.2"], "SQL": ["H.2.4"]},
            root_bucket=bucket,
        )
        started = time.perf_counter()
        agreements = 0
        saw_tie = saw_zero = False
        for record in corpus50_records:
            expected = oracle.classify(record.title)
            actual = classify(record, ontology)
            assert actual == expected, record.title
            agreements += 1
            if len(expected) > 1:
                saw_tie = True
            if expected[0][1] == "provisional":
                saw_zero = True
        elapsed = time.perf_counter() - started
        assert agreements == 50 and saw_tie and saw_zero
        assert elapsed < 1.0, f"classification took {elapsed:.2f}s"


def test_navigated_search_scenario(tmp_path):
    with criterion("navigated-search-scenario"):
        portal = _seed_portal(tmp_path)
        client = TestClient(create_app(portal))

        nav = client.get("/api/v1/ontology/node/H.2", params={"radius": 1}).json()
        hits = {hit["id"] for hit in nav["context"]["internal_hits"]}
        assert "a01" in hits

        page = client.get("/api/v1/articles/a01").json()
        assert page["uri"] is None
        assert page["access"]["kind"] == "scholar"
        decoded = unquote(page["access"]["metaquery"]["url"])
        assert '"Managing taxonomies in relational databases"' in decoded

        bibtex = client.get(page["bibtex_url"])
        assert bibtex.status_code == 200
        reparsed, warnings = parse_bibtex(bibtex.text)
        assert not warnings and len(reparsed) == 1
        original = portal.state.corpus.records["a01"]
        out = reparsed[0]
        assert (out.id, out.title, out.year, out.context, out.authors, out.uri) == (
            original.id, original.title, original.year, original.context,
            original.authors, original.uri,
        )


def test_snapshot_determinism_and_replay(tmp_path):
    with criterion("snapshot-determinism-and-replay"):
        portal = _seed_portal(tmp_path)
        portal.translate()
        proposal, _ = portal.submit_proposal("I.3.3", "fr", "rendu non-photorealiste", "u7")
        portal.validate_proposal(proposal.id, "m1", "reject-with-keep")
        proposal2, _ = portal.submit_proposal("H.2", "fr", "gestion des données", "u8")
        portal.validate_proposal(proposal2.id, "m1", "approve")
        portal.validate_proposal(proposal2.id, "m2", "approve")

        ontology = portal.state.ontology
        document = export_snapshot(ontology)
        assert export_snapshot(import_snapshot(document)) == document
        triples = build_snapshot(portal.state.corpus).document
        reloaded = load_snapshot(triples, ontology)
        assert build_snapshot(reloaded).document == triples

        read_requests = [
            "/api/v1/ontology/node/ROOT?radius=1&lang=en",
            "/api/v1/ontology/node/H.2?radius=1&lang=en",
            "/api/v1/ontology/node/H.2?radius=1&lang=fr",
            "/api/v1/ontology/node/D.3.2?radius=2&lang=en",
            "/api/v1/ontology/node/I.3.3?radius=1&lang=fr",
            "/api/v1/ontology/node/C%2B%2B?radius=1&lang=en",
            "/api/v1/search?q=database+management&lang=en",
            "/api/v1/search?q=rendu+non+photo-r%C3%A9aliste&lang=fr",
            "/api/v1/search?q=gestion+des+donn%C3%A9es&lang=fr",
            "/api/v1/search?q=picture+image+generation&lang=en",
            "/api/v1/search?q=zzz+unknown+here&lang=en",
            "/api/v1/articles/search?q=quantum+annealing",
            "/api/v1/articles/a01",
            "/api/v1/articles/a33",
            "/api/v1/articles/a01/bibtex",
            "/api/v1/articles/a30/bibtex",
            "/api/v1/feeds/translations.rss?filter=all",
            "/api/v1/feeds/translations.rss?filter=open",
            "/api/v1/ontology/snapshot.xml",
            "/api/v1/articles/search?q=database",
        ]
        assert len(read_requests) == 20
        client = TestClient(create_app(portal))
        recorded = [(client.get(url).status_code, client.get(url).text) for url in read_requests]

        reborn = Portal(portal.config)
        reborn_client = TestClient(create_app(reborn))
        for url, (status, body) in zip(read_requests, recorded):
            response = reborn_client.get(url)
            assert response.status_code == status, url
            assert response.text == body, url


def test_url_encoding_roundtrip():
    with criterion("url-encoding-roundtrip"):
        provider = ProviderTemplate(name="kbs", url_template="https://kbs.test/search?q={keywords}",
                                    joiner="+", max_keywords=None)
        rng = random.Random(20080917)
        pool = ["c++", "naïve", "image generation", "base de données", "c#",
                "multi word phrase", "half+joined", "percent%sign", "quote\"mark",
                "database", "rendu non-photorealiste", "ontologie", "słowo", "データ"]
        prefix, suffix = provider.url_template.split("{keywords}")
        for _ in range(1000):
            count = rng.randint(1, 6)
            keywords = [rng.choice(pool) for _ in range(count)]
            query = generate(keywords, provider)
            segment = query.url[len(prefix):]
            decoded = [unquote(part) for part in segment.split("+")]
            assert decoded == keywords
            assert query.url.isascii()


def _write_dblp_fixture(path: Path, approx_bytes: int) -> int:
    pad = "filler words to bulk the record body out " * 12
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("<?xml version=\"1.0\"?>\n<dblp>\n")
        written = 40
        while written < approx_bytes:
            row = (f'<article key="journals/big/R{count}">'
                   f"<title>Générated record {count} about databases {pad}</title>"
                   f"<author>Author {count}</author><author>B&eacute;atrice Co</author>"
                   f"<year>{1990 + count % 30}</year><journal>Journal {count % 11}</journal>"
                   f"</article>\n")
            handle.write(row)
            written += len(row)
            count += 1
        handle.write("</dblp>\n")
    return count


def test_streaming_memory_bound(tmp_path):
    with criterion("streaming-memory-bound"):
        small_path = tmp_path / "small.xml"
        large_path = tmp_path / "large.xml"
        small_count = _write_dblp_fixture(small_path, 1 * 1024 * 1024)
        large_count = _write_dblp_fixture(large_path, 50 * 1024 * 1024)
        assert large_path.stat().st_size >= 50 * 1024 * 1024

        def peak_for(path, expected):
            tracemalloc.start()
            seen = sum(1 for _ in parse_dblp_xml(path))
            _, peak = tracemalloc.get_traced_memory()
            tracemalloc.stop()
            assert seen == expected
            return peak

        small_peak = peak_for(small_path, small_count)
        large_peak = peak_for(large_path, large_count)
        assert large_peak <= 2 * small_peak, (
            f"peak memory grew with file size: {small_peak} -> {large_peak}"
        )


def test_incremental_update_idempotence_composability():
    with criterion("incremental-update-composability"):
        rng = random.Random(1998)
        titles = ["database systems design", "picture generation methods",
                  "information retrieval models", "quantum annealing studies",
                  "software engineering notes", "graph layout algorithms"]
        for trial in range(100):
            size = rng.randint(1, 24)
            ids = rng.sample(range(1000), size)
            batch = [
                ArticleRecord(
                    id=f"r{rid}",
                    title=f"{rng.choice(titles)} volume {rid}",
                    year=rng.randint(1980, 2012),
                    context=f"Venue {rid % 5}",
                    authors=(f"Author {rid}", "Co Author"),
                )
                for rid in ids
            ]
            cut = rng.randint(0, size)
            merged = incremental_update(PseudoCorpus.empty(), batch)
            split = incremental_update(
                incremental_update(PseudoCorpus.empty(), batch[:cut]), batch[cut:],
            )
            twice = incremental_update(merged, batch)
            merged_doc = build_snapshot(merged).document
            assert build_snapshot(split).document == merged_doc, trial
            assert build_snapshot(twice).document == merged_doc, trial
