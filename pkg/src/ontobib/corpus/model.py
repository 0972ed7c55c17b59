"""Pseudo-corpus store: article records, inverted title index, snapshots.

The corpus holds bibliographic metadata only (titles, authors, venues);
the articles themselves live in external libraries. Corpus values are
immutable versioned views: updates return a new corpus, so readers keep a
consistent picture while the single writer advances.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from urllib.parse import quote, unquote

from ontobib import textpipe
from ontobib.ontology.model import KIND_GENERAL, KIND_MISCELLANEOUS, Ontology

STATUS_PERMANENT = "permanent"
STATUS_PROVISIONAL = "provisional"

_WHITESPACE_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class ArticleRecord:
    id: str
    title: str
    year: int | None = None
    context: str = ""
    authors: tuple[str, ...] = ()
    uri: str | None = None
    language: str | None = None
    assignments: tuple[tuple[str, str], ...] = ()

    def title_language(self) -> str:
        return self.language if self.language in ("en", "fr") else "en"

    def title_lemmas(self) -> set[str]:
        return textpipe.extract_keywords(self.title, self.title_language())

    def assigned_nodes(self) -> list[str]:
        return [node_id for node_id, _ in self.assignments]

    def is_provisional(self) -> bool:
        return bool(self.assignments) and all(
            status == STATUS_PROVISIONAL for _, status in self.assignments
        )

    def with_assignments(self, assignments: list[tuple[str, str]]) -> "ArticleRecord":
        return replace(self, assignments=tuple(sorted(assignments)))


def record_id(title: str, year: int | None) -> str:
    """Stable fallback id for sources without a native key."""
    normalized = _WHITESPACE_RE.sub(" ", title.strip().lower())
    digest = hashlib.sha1(f"{normalized}|{year if year is not None else ''}".encode()).hexdigest()
    return f"t{digest[:16]}"


def build_lemma_index(records: dict[str, ArticleRecord]) -> dict[str, set[str]]:
    """Inverted index over title lemmas, recomputed from scratch."""
    index: dict[str, set[str]] = {}
    for record in records.values():
        for lemma in record.title_lemmas():
            index.setdefault(lemma, set()).add(record.id)
    return index


@dataclass(frozen=True)
class PseudoCorpus:
    records: dict[str, ArticleRecord] = field(default_factory=dict)
    lemma_index: dict[str, set[str]] = field(default_factory=dict)
    version: int = 0
    updated_at: datetime | None = None

    @classmethod
    def empty(cls) -> "PseudoCorpus":
        return cls()

    def content_equal(self, other: "PseudoCorpus") -> bool:
        """Equality on stored content, ignoring version and timestamps."""
        return self.records == other.records


def incremental_update(corpus: PseudoCorpus, new_records: list[ArticleRecord]) -> PseudoCorpus:
    """Upsert a batch of records by id, maintaining the inverted index.

    Applying the same batch twice leaves the content identical to applying
    it once; splitting a batch of distinct ids in two and applying the
    parts in sequence equals applying the merged batch.
    """
    records = dict(corpus.records)
    index = {lemma: set(ids) for lemma, ids in corpus.lemma_index.items()}
    for record in new_records:
        old = records.get(record.id)
        if old is not None:
            for lemma in old.title_lemmas():
                bucket = index.get(lemma)
                if bucket is not None:
                    bucket.discard(record.id)
                    if not bucket:
                        del index[lemma]
        records[record.id] = record
        for lemma in record.title_lemmas():
            index.setdefault(lemma, set()).add(record.id)
    return PseudoCorpus(
        records=records,
        lemma_index=index,
        version=corpus.version + 1,
        updated_at=datetime.now(timezone.utc),
    )


def replace_records(corpus: PseudoCorpus, changed: dict[str, ArticleRecord]) -> PseudoCorpus:
    """Swap records whose titles are unchanged (assignment edits only)."""
    for record_id_, record in changed.items():
        if record_id_ not in corpus.records:
            raise KeyError(record_id_)
        if corpus.records[record_id_].title != record.title:
            raise ValueError(f"record {record_id_!r} title changed; use incremental_update")
    records = dict(corpus.records)
    records.update(changed)
    return PseudoCorpus(
        records=records,
        lemma_index=corpus.lemma_index,
        version=corpus.version + 1,
        updated_at=datetime.now(timezone.utc),
    )


@dataclass(frozen=True)
class SnapshotCache:
    document: str
    corpus_version: int


def _encode_value(value: str) -> str:
    if " " in value or "%" in value or any(ord(ch) < 0x20 for ch in value):
        return quote(value, safe="")
    return value


def build_snapshot(corpus: PseudoCorpus) -> SnapshotCache:
    """Serialize the corpus to its canonical line-oriented triple listing.

    One `<article-id> <predicate> <value>` triple per line, lexicographically
    sorted; values containing spaces (or raw percent signs) are
    percent-encoded. Author values carry a zero-padded ordinal prefix so the
    sorted listing still preserves author order. Equal corpora serialize to
    byte-equal documents.
    """
    lines: list[str] = []
    for record in corpus.records.values():
        rid = _encode_value(record.id)
        lines.append(f"{rid} title {_encode_value(record.title)}")
        if record.year is not None:
            lines.append(f"{rid} year {record.year}")
        if record.context:
            lines.append(f"{rid} context {_encode_value(record.context)}")
        for position, author in enumerate(record.authors):
            lines.append(f"{rid} author {_encode_value(f'{position:03d} {author}')}")
        if record.uri:
            lines.append(f"{rid} uri {_encode_value(record.uri)}")
        if record.language:
            lines.append(f"{rid} language {_encode_value(record.language)}")
        for node_id, _ in record.assignments:
            lines.append(f"{rid} assignedTo {_encode_value(node_id)}")
    lines.sort()
    document = "\n".join(lines) + "\n" if lines else ""
    return SnapshotCache(document=document, corpus_version=corpus.version)


def load_snapshot(document: str, ontology: Ontology) -> PseudoCorpus:
    """Rebuild a corpus from a triple listing produced by build_snapshot.

    Assignment status is recovered from the ontology: assignments to
    miscellaneous/general buckets are provisional, every other one is
    permanent (the classifier never mixes the two for one node kind).
    """
    fields: dict[str, dict[str, list[str]]] = {}
    for line_no, line in enumerate(document.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split(" ", 2)
        if len(parts) != 3:
            raise ValueError(f"malformed triple on line {line_no}")
        rid, predicate, value = parts
        fields.setdefault(unquote(rid), {}).setdefault(predicate, []).append(unquote(value))

    records: dict[str, ArticleRecord] = {}
    for rid, predicates in fields.items():
        titles = predicates.get("title", [])
        if len(titles) != 1:
            raise ValueError(f"record {rid!r} must carry exactly one title")
        authors = tuple(
            value.split(" ", 1)[1] if " " in value else value
            for value in sorted(predicates.get("author", []))
        )
        years = predicates.get("year", [])
        languages = predicates.get("language", [])
        assignments = []
        for node_id in predicates.get("assignedTo", []):
            kind = ontology.node(node_id).kind
            status = STATUS_PROVISIONAL if kind in (KIND_GENERAL, KIND_MISCELLANEOUS) else STATUS_PERMANENT
            assignments.append((node_id, status))
        records[rid] = ArticleRecord(
            id=rid,
            title=titles[0],
            year=int(years[0]) if years else None,
            context=predicates.get("context", [""])[0],
            authors=authors,
            uri=predicates.get("uri", [None])[0],
            language=languages[0] if languages else None,
            assignments=tuple(sorted(assignments)),
        )
    return PseudoCorpus(
        records=records,
        lemma_index=build_lemma_index(records),
        version=0,
        updated_at=None,
    )


def search_internal(corpus: PseudoCorpus, query_lemmas: set[str]) -> list[ArticleRecord]:
    """Rank records by title-lemma overlap with the query.

    Zero-overlap records never appear; ties break by year (newest first,
    unknown year last) and then id.
    """
    overlap: dict[str, int] = {}
    for lemma in query_lemmas:
        for rid in corpus.lemma_index.get(lemma, ()):
            overlap[rid] = overlap.get(rid, 0) + 1
    ranked = sorted(
        overlap.items(),
        key=lambda item: (
            -item[1],
            -(corpus.records[item[0]].year if corpus.records[item[0]].year is not None else -1),
            item[0],
        ),
    )
    return [corpus.records[rid] for rid, _ in ranked]
