"""Meta-queries to external digital libraries, and metadata export.

A meta-query is just a URL with keywords baked in: the remote library's
own search engine does the actual work. Nothing here performs network
calls; the module only builds URLs and export formats (BibTeX, Dublin
Core pairs) from records and navigation context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import quote, urlsplit

from ontobib.ontology.model import KIND_DESCRIPTOR, ROOT_ID, Ontology
from ontobib.corpus.model import ArticleRecord

_PLACEHOLDER = "{keywords}"
_PROCEEDINGS_RE = re.compile(r"proceedings|conference|workshop|symposium|\bproc\b", re.IGNORECASE)

DEFAULT_MAX_KEYWORDS = 8

SCHOLAR_TEMPLATE = "https://scholar.google.com/scholar?q={keywords}"


class EmptyKeywords(ValueError):
    pass


class BadTemplate(ValueError):
    pass


@dataclass(frozen=True)
class ProviderTemplate:
    name: str
    url_template: str
    joiner: str = "+"
    max_keywords: int | None = DEFAULT_MAX_KEYWORDS

    def __post_init__(self):
        if self.url_template.count(_PLACEHOLDER) != 1:
            raise BadTemplate(
                f"provider {self.name!r} template must contain {_PLACEHOLDER!r} exactly once"
            )
        if self.max_keywords is not None and self.max_keywords < 1:
            raise BadTemplate(f"provider {self.name!r} max_keywords must be >= 1")


SCHOLAR_PROVIDER = ProviderTemplate(name="scholar", url_template=SCHOLAR_TEMPLATE, joiner="+",
                                    max_keywords=None)


@dataclass(frozen=True)
class MetaQuery:
    provider: str
    url: str
    keywords: tuple[str, ...]


@dataclass(frozen=True)
class DirectUri:
    uri: str


def generate(keywords: list[str], provider: ProviderTemplate) -> MetaQuery:
    """Render keywords into a provider's search URL.

    Keywords are individually percent-encoded (so the joiner stays the only
    separator) and truncated to the provider's cap, local keywords first.
    Decoding the keyword segment and splitting on the joiner reproduces the
    list exactly.
    """
    if not keywords:
        raise EmptyKeywords("cannot build a meta-query from zero keywords")
    used = list(keywords)
    if provider.max_keywords is not None:
        used = used[:provider.max_keywords]
    joined = provider.joiner.join(quote(keyword, safe="") for keyword in used)
    url = provider.url_template.replace(_PLACEHOLDER, joined)
    split = urlsplit(url)
    if not split.scheme or not split.netloc:
        raise BadTemplate(f"provider {provider.name!r} renders a non-absolute URL: {url!r}")
    return MetaQuery(provider=provider.name, url=url, keywords=tuple(used))


def ordered_cluster(ontology: Ontology, node_id: str) -> list[str]:
    """Cluster lemmas in meta-query order: node-local first (native, then
    added), then inherited, nearest superior first."""
    node = ontology.node(node_id)
    if node_id == ROOT_ID:
        return []
    ordered: list[str] = []
    seen: set[str] = set()

    def push(lemmas) -> None:
        for lemma in sorted(lemmas):
            if lemma not in seen:
                seen.add(lemma)
                ordered.append(lemma)

    frontier = [node_id]
    visited: set[str] = set()
    while frontier:
        next_frontier: list[str] = []
        for current in sorted(frontier):
            if current in visited or current == ROOT_ID:
                continue
            visited.add(current)
            entry = ontology.nodes[current]
            push(entry.native_keywords)
            push(entry.added_lemmas())
            parent = ontology.parent_of(current)
            if parent is not None:
                next_frontier.append(parent)
            elif entry.kind == KIND_DESCRIPTOR:
                next_frontier.extend(ontology.described_nodes(current))
        frontier = next_frontier
    return ordered


def context_queries(ontology: Ontology, node_id: str,
                    providers: list[ProviderTemplate]) -> list[MetaQuery]:
    """One meta-query per configured provider for a navigation context."""
    keywords = ordered_cluster(ontology, node_id)
    if not keywords:
        return []
    return [generate(keywords, provider) for provider in providers]


def scholar_fallback(record: ArticleRecord,
                     provider: ProviderTemplate = SCHOLAR_PROVIDER) -> MetaQuery | DirectUri:
    """Direct link when the record has a URI, else an exact-article lookup.

    The lookup quotes the full title as a phrase and appends the first
    author's surname when one is known.
    """
    if record.uri:
        return DirectUri(uri=record.uri)
    keywords = [f'"{record.title}"']
    if record.authors:
        surname = record.authors[0].split()[-1]
        keywords.append(surname)
    return generate(keywords, provider)


def _escape_braces(value: str) -> str:
    return value.replace("{", r"\{").replace("}", r"\}")


def export_bibtex(record: ArticleRecord) -> str:
    """Render a record as a BibTeX entry that reparses to the same fields."""
    proceedings = bool(_PROCEEDINGS_RE.search(record.context))
    entry_type = "inproceedings" if proceedings else "article"
    venue_field = "booktitle" if proceedings else "journal"
    fields: list[tuple[str, str]] = [("title", _escape_braces(record.title))]
    if record.authors:
        fields.append(("author", _escape_braces(" and ".join(record.authors))))
    if record.year is not None:
        fields.append(("year", str(record.year)))
    if record.context:
        fields.append((venue_field, _escape_braces(record.context)))
    if record.uri:
        fields.append(("url", _escape_braces(record.uri)))
    body = ",\n".join(f"  {name} = {{{value}}}" for name, value in fields)
    return f"@{entry_type}{{{record.id},\n{body}\n}}\n"


def export_embedded_metadata(record: ArticleRecord) -> list[tuple[str, str]]:
    """Dublin Core pairs for embedding in an article page (Zotero-ready)."""
    pairs: list[tuple[str, str]] = [("DC.title", record.title)]
    for author in record.authors:
        pairs.append(("DC.creator", author))
    if record.year is not None:
        pairs.append(("DC.date", str(record.year)))
    if record.context:
        pairs.append(("DC.source", record.context))
    if record.uri:
        pairs.append(("DC.identifier", record.uri))
    return pairs
