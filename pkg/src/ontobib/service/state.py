"""Portal state: one immutable snapshot swapped atomically by one writer.

Persistence is plain files in the data directory, all replayable and
diffable:

* ``ontology.xml``       - canonical ontology snapshot
* ``corpus.triples``     - sorted triple listing of the pseudo-corpus
* ``proposals.log``      - append-only JSON-lines event log
* ``translations.json``  - machine translations (validated ones replay
                           from the event log)

Restarting the portal from these artifacts reproduces read responses
byte for byte.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from ontobib.corpus.classify import classify, reclassify_orphans
from ontobib.corpus.bibtex import parse_bibtex
from ontobib.corpus.dblp import parse_dblp_xml
from ontobib.corpus.model import (
    STATUS_PERMANENT,
    ArticleRecord,
    PseudoCorpus,
    build_snapshot,
    incremental_update,
    load_snapshot,
)
from ontobib.ontology.ccs import load_ccs, load_descriptors
from ontobib.ontology.model import Ontology, ROOT_ID, make_node
from ontobib.ontology.ops import add_proximity_arcs, attach_descriptors, ensure_general_bucket
from ontobib.ontology.snapshot import export_snapshot, import_snapshot
from ontobib.service.config import PortalConfig
from ontobib.translation.mt import GlossaryClient, MachineTranslationResult, machine_translate_all
from ontobib.translation.registry import NodeTranslation, TranslationRegistry

ONTOLOGY_FILE = "ontology.xml"
CORPUS_FILE = "corpus.triples"
PROPOSALS_FILE = "proposals.log"
TRANSLATIONS_FILE = "translations.json"


@dataclass(frozen=True)
class PortalState:
    ontology: Ontology
    corpus: PseudoCorpus
    registry: TranslationRegistry


def _atomic_write(path: Path, content: str) -> None:
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, delete=False, suffix=".tmp",
    )
    try:
        handle.write(content)
        handle.flush()
        os.fsync(handle.fileno())
        handle.close()
        os.replace(handle.name, path)
    except BaseException:
        handle.close()
        os.unlink(handle.name)
        raise


class PortalStore:
    """File backend for the portal's persisted artifacts."""

    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, name: str) -> Path:
        return self.data_dir / name

    def load(self, committee: Iterable[str]) -> PortalState:
        ontology_path = self._path(ONTOLOGY_FILE)
        if ontology_path.exists():
            ontology = import_snapshot(ontology_path.read_text(encoding="utf-8"))
        else:
            ontology = Ontology({ROOT_ID: make_node(ROOT_ID, "computer science", depth=0)},
                                frozenset(), version=1)
        corpus_path = self._path(CORPUS_FILE)
        if corpus_path.exists():
            corpus = load_snapshot(corpus_path.read_text(encoding="utf-8"), ontology)
        else:
            corpus = PseudoCorpus.empty()
        events = []
        log_path = self._path(PROPOSALS_FILE)
        if log_path.exists():
            for line in log_path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    events.append(json.loads(line))
        registry, ontology = TranslationRegistry.replay(events, set(committee), ontology)
        translations_path = self._path(TRANSLATIONS_FILE)
        if translations_path.exists():
            stored = json.loads(translations_path.read_text(encoding="utf-8"))
            for raw in stored.get("machine", []):
                registry.set_machine(NodeTranslation(**raw))
        return PortalState(ontology=ontology, corpus=corpus, registry=registry)

    def save_ontology(self, ontology: Ontology) -> None:
        _atomic_write(self._path(ONTOLOGY_FILE), export_snapshot(ontology))

    def save_corpus(self, corpus: PseudoCorpus) -> None:
        _atomic_write(self._path(CORPUS_FILE), build_snapshot(corpus).document)

    def save_machine_translations(self, registry: TranslationRegistry) -> None:
        payload = {
            "machine": [
                {"node": t.node, "language": t.language, "label": t.label,
                 "status": t.status, "source": t.source}
                for _, t in sorted(registry.machine.items())
            ],
        }
        _atomic_write(self._path(TRANSLATIONS_FILE), json.dumps(payload, indent=2, ensure_ascii=False) + "\n")

    def append_events(self, events: list[dict]) -> None:
        if not events:
            return
        with open(self._path(PROPOSALS_FILE), "a", encoding="utf-8") as handle:
            for event in events:
                handle.write(json.dumps(event, ensure_ascii=False) + "\n")


class Portal:
    """Single-writer facade over the portal state.

    Reads grab the current immutable snapshot without locking; every write
    goes through :meth:`_mutate`, which works on copies, persists, and only
    then publishes the new snapshot.
    """

    def __init__(self, config: PortalConfig):
        self.config = config
        self.store = PortalStore(config.data_dir)
        self._lock = threading.Lock()
        self._state = self.store.load(config.committee)
        self._persisted_events = len(self._state.registry.events)

    @property
    def state(self) -> PortalState:
        return self._state

    def scholar_provider(self):
        from ontobib.metaquery import ProviderTemplate
        return ProviderTemplate(name="scholar", url_template=self.config.scholar_template,
                                joiner="+", max_keywords=None)

    def _mutate(self, fn: Callable[[PortalState], PortalState],
                save_ontology: bool = True, save_corpus: bool = True,
                save_translations: bool = False) -> PortalState:
        with self._lock:
            working = PortalState(
                ontology=self._state.ontology,
                corpus=self._state.corpus,
                registry=self._state.registry.clone(),
            )
            new_state = fn(working)
            if save_ontology and new_state.ontology is not self._state.ontology:
                self.store.save_ontology(new_state.ontology)
            if save_corpus and new_state.corpus is not self._state.corpus:
                self.store.save_corpus(new_state.corpus)
            if save_translations:
                self.store.save_machine_translations(new_state.registry)
            self.store.append_events(new_state.registry.events[self._persisted_events:])
            self._persisted_events = len(new_state.registry.events)
            self._state = new_state
            return new_state

    # -- ingestion ---------------------------------------------------------

    def ingest_ccs(self, path: str | Path) -> int:
        text = Path(path).read_text(encoding="utf-8")
        def apply(state: PortalState) -> PortalState:
            ontology = load_ccs(text)
            return PortalState(ontology, state.corpus, state.registry)
        return len(self._mutate(apply).ontology.nodes)

    def ingest_descriptors(self, path: str | Path) -> int:
        text = Path(path).read_text(encoding="utf-8")
        descriptors = load_descriptors(text)
        def apply(state: PortalState) -> PortalState:
            ontology = attach_descriptors(state.ontology, descriptors)
            return PortalState(ontology, state.corpus, state.registry)
        self._mutate(apply)
        return len(descriptors)

    def _parse_records(self, path: str | Path, fmt: str) -> tuple[list[ArticleRecord], list[str]]:
        if fmt == "bibtex":
            return parse_bibtex(Path(path).read_text(encoding="utf-8"))
        if fmt == "dblp":
            return list(parse_dblp_xml(path)), []
        raise ValueError(f"unknown corpus format {fmt!r} (expected bibtex or dblp)")

    def ingest_corpus(self, path: str | Path, fmt: str = "bibtex") -> tuple[int, list[str]]:
        """Parse, classify and upsert a batch of records; link co-assigned
        branches with proximity arcs."""
        records, warnings = self._parse_records(path, fmt)
        def apply(state: PortalState) -> PortalState:
            ontology, _ = ensure_general_bucket(state.ontology)
            assigned = [r.with_assignments(classify(r, ontology)) for r in records]
            corpus = incremental_update(state.corpus, assigned)
            evidence = [
                (r.id, [node for node, status in r.assignments if status == STATUS_PERMANENT])
                for r in assigned
            ]
            ontology = add_proximity_arcs(ontology, evidence, self.config.proximity_threshold)
            return PortalState(ontology, corpus, state.registry)
        self._mutate(apply)
        return len(records), warnings

    # Weekly updates are the same upsert path; the separate name mirrors the
    # operational cadence (bootstrap load vs incremental refresh).
    update_corpus = ingest_corpus

    def reclassify(self, min_cluster: int | None = None, min_shared: int | None = None) -> int:
        promoted = []
        def apply(state: PortalState) -> PortalState:
            ontology, corpus = reclassify_orphans(
                state.corpus, state.ontology,
                min_cluster or self.config.orphan_min_cluster,
                min_shared or self.config.orphan_min_shared,
            )
            promoted.extend(
                rid for rid, record in corpus.records.items()
                if record.assignments != state.corpus.records[rid].assignments
            )
            return PortalState(ontology, corpus, state.registry)
        self._mutate(apply)
        return len(promoted)

    def translate(self, language: str = "fr",
                  glossary: str | Path | None = None) -> MachineTranslationResult:
        path = glossary or self.config.glossary_path
        client = GlossaryClient.from_file(path) if path else GlossaryClient.bundled()
        result_holder: list[MachineTranslationResult] = []
        def apply(state: PortalState) -> PortalState:
            result = machine_translate_all(
                state.ontology, language, client,
                already_validated=set(state.registry.validated),
            )
            for translation in result.translations:
                state.registry.set_machine(translation)
            result_holder.append(result)
            return state
        self._mutate(apply, save_translations=True)
        return result_holder[0]

    def rebuild_snapshot(self) -> None:
        with self._lock:
            self.store.save_ontology(self._state.ontology)
            self.store.save_corpus(self._state.corpus)

    # -- community workflow --------------------------------------------------

    def submit_proposal(self, node_id: str, language: str, text: str, submitter: str):
        holder = []
        def apply(state: PortalState) -> PortalState:
            proposal, item = state.registry.submit_proposal(
                node_id, language, text, submitter, state.ontology,
            )
            holder.append((proposal, item))
            return state
        self._mutate(apply)
        return holder[0]

    def validate_proposal(self, proposal_id: str, member: str, verdict: str):
        holder = []
        def apply(state: PortalState) -> PortalState:
            proposal, ontology = state.registry.validate_proposal(
                proposal_id, member, verdict, state.ontology,
            )
            holder.append(proposal)
            return PortalState(ontology, state.corpus, state.registry)
        self._mutate(apply)
        return holder[0]

    def register_entry(self, node_id: str, language: str, text: str):
        holder = []
        def apply(state: PortalState) -> PortalState:
            entry, ontology = state.registry.register_alternative_entry(
                node_id, language, text, state.ontology,
            )
            holder.append(entry)
            return PortalState(ontology, state.corpus, state.registry)
        self._mutate(apply)
        return holder[0]
