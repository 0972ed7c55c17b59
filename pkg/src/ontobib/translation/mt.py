"""Machine-translation bootstrap for node labels.

Any object with a ``translate(text, source, target) -> str`` method works
as a client; the bundled default is an offline glossary lookup so the
bootstrap (and the test suite) never touches the network.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Protocol

from ontobib import textpipe
from ontobib.ontology.model import KIND_DESCRIPTOR, Ontology
from ontobib.translation.registry import (
    SOURCE_MT,
    STATUS_MACHINE,
    NodeTranslation,
)


class ClientUnavailable(RuntimeError):
    """The translation client cannot service requests at all."""


class TranslationFailure(ValueError):
    """The client could not translate one particular text."""


class TranslationClient(Protocol):
    def translate(self, text: str, source: str, target: str) -> str: ...


class GlossaryClient:
    """Offline dictionary client: longest-match-first phrase lookup.

    The glossary file carries ``english<TAB>french`` lines; labels are
    matched phrase-by-phrase over their token sequence, longest phrase
    first. Unmatched tokens pass through; a label with no match at all is
    a translation failure.
    """

    def __init__(self, table: dict[str, str]):
        self.table = dict(table)
        self._max_phrase = max((phrase.count(" ") + 1 for phrase in table), default=1)

    @classmethod
    def from_file(cls, path: str | Path) -> "GlossaryClient":
        return cls(cls._parse(Path(path).read_text(encoding="utf-8")))

    @classmethod
    def bundled(cls) -> "GlossaryClient":
        text = resources.files("ontobib.data").joinpath("glossary_en_fr.txt").read_text(encoding="utf-8")
        return cls(cls._parse(text))

    @staticmethod
    def _parse(text: str) -> dict[str, str]:
        table = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            english, _, french = line.partition("\t")
            if english and french:
                table[english.strip().lower()] = french.strip()
        return table

    def translate(self, text: str, source: str = "en", target: str = "fr") -> str:
        if (source, target) != ("en", "fr"):
            raise TranslationFailure(f"unsupported language pair {source}->{target}")
        tokens = textpipe.tokenize(text)
        if not tokens:
            raise TranslationFailure(text)
        parts: list[str] = []
        matched = False
        i = 0
        while i < len(tokens):
            for length in range(min(self._max_phrase, len(tokens) - i), 0, -1):
                phrase = " ".join(tokens[i:i + length])
                if phrase in self.table:
                    parts.append(self.table[phrase])
                    matched = True
                    i += length
                    break
            else:
                parts.append(tokens[i])
                i += 1
        if not matched:
            raise TranslationFailure(text)
        return " ".join(parts)


@dataclass
class MachineTranslationResult:
    translations: list[NodeTranslation]
    failures: list[tuple[str, str]]  # (node id, reason)


def machine_translate_all(ontology: Ontology, language: str, client: TranslationClient,
                          already_validated: set[tuple[str, str]] = frozenset()) -> MachineTranslationResult:
    """Produce a machine translation for every node lacking a validated label.

    Descriptor leaves are skipped (proper nouns display verbatim in every
    language). Per-node client failures fall back to the English label,
    flagged as client output, and are listed in `failures`.
    """
    translations: list[NodeTranslation] = []
    failures: list[tuple[str, str]] = []
    for node_id in sorted(ontology.nodes):
        node = ontology.nodes[node_id]
        if node.kind == KIND_DESCRIPTOR or (node_id, language) in already_validated:
            continue
        try:
            label = client.translate(node.label, "en", language)
        except Exception as exc:  # fall back per node, keep going
            failures.append((node_id, str(exc) or exc.__class__.__name__))
            label = node.label
        translations.append(NodeTranslation(
            node=node_id, language=language, label=label,
            status=STATUS_MACHINE, source=SOURCE_MT,
        ))
    return MachineTranslationResult(translations=translations, failures=failures)
