"""Cross-language query resolution against the ontology.

The cascade: exact label match in the query language, then exact match
against community alternative entries, then lemma-overlap scoring of the
query against keyword clusters (plus entry lemmas). A query matching
nothing raises :class:`QueryNotFound` carrying the user-facing message.
"""

from __future__ import annotations

import re

from ontobib import textpipe
from ontobib.ontology.model import ROOT_ID, Ontology
from ontobib.ontology.ops import keyword_cluster
from ontobib.translation.registry import TranslationRegistry

LANGUAGE_NAMES = {"en": "English", "fr": "French"}

_SPACE_RE = re.compile(r"\s+")


class QueryNotFound(LookupError):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


def notfound_message(text: str, language: str) -> str:
    name = LANGUAGE_NAMES.get(language, language)
    return f'"{text}" does not exist in {name} in the ACM ontology'


def _normalize(text: str) -> str:
    return _SPACE_RE.sub(" ", textpipe.fold_diacritics(text.casefold())).strip()


def resolve_query(text: str, language: str, ontology: Ontology,
                  registry: TranslationRegistry) -> list[str]:
    """Ranked node ids answering a natural-language query."""
    if language not in textpipe.LANGUAGES:
        raise textpipe.UnknownLanguage(language)
    normalized = _normalize(text)

    if normalized:
        label_hits = []
        for node_id in sorted(ontology.nodes):
            if language == "en":
                label = ontology.nodes[node_id].label
            else:
                translation = (registry.validated.get((node_id, language))
                               or registry.machine.get((node_id, language)))
                if translation is None:
                    continue
                label = translation.label
            if _normalize(label) == normalized:
                label_hits.append(node_id)
        if label_hits:
            return label_hits

        entry_hits = sorted({
            entry.node for entry in registry.entries
            if entry.language == language and _normalize(entry.text) == normalized
        })
        if entry_hits:
            return entry_hits

    query_lemmas = textpipe.extract_keywords(text, language)
    entry_lemmas: dict[str, set[str]] = {}
    for entry in registry.entries:
        if entry.language == language:
            entry_lemmas.setdefault(entry.node, set()).update(entry.lemmas)
    scored: list[tuple[int, str]] = []
    if query_lemmas:
        for node_id in ontology.nodes:
            if node_id == ROOT_ID:
                continue
            searchable = keyword_cluster(ontology, node_id) | entry_lemmas.get(node_id, set())
            score = len(query_lemmas & searchable)
            if score > 0:
                scored.append((score, node_id))
    if not scored:
        raise QueryNotFound(notfound_message(text, language))
    scored.sort(key=lambda item: (-item[0], item[1]))
    return [node_id for _, node_id in scored]
