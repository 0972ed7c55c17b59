from __future__ import annotations

from urllib.parse import unquote, urlsplit

import pytest
from hypothesis import given, strategies as st

from ontobib.corpus import ArticleRecord, parse_bibtex
from ontobib.metaquery import (
    BadTemplate,
    DirectUri,
    EmptyKeywords,
    ProviderTemplate,
    SCHOLAR_PROVIDER,
    context_queries,
    export_bibtex,
    export_embedded_metadata,
    generate,
    ordered_cluster,
    scholar_fallback,
)
from ontobib.ontology import ROOT_ID, add_keyword

KBS = ProviderTemplate(name="kbs", url_template="https://kbs.test/search?q={keywords}", joiner="+")


def decode_keywords(query: str, provider: ProviderTemplate) -> list[str]:
    prefix = provider.url_template.split("{keywords}")[0]
    suffix = provider.url_template.split("{keywords}")[1]
    segment = query[len(prefix):len(query) - len(suffix) if suffix else None]
    return [unquote(part) for part in segment.split(provider.joiner)]


class TestGenerate:
    def test_pinned_database_query(self):
        query = generate(["database", "management"], KBS)
        assert query.url == "https://kbs.test/search?q=database+management"

    def test_reserved_characters_encoded(self):
        query = generate(["c++"], KBS)
        assert "c%2B%2B" in query.url

    def test_empty_keywords(self):
        with pytest.raises(EmptyKeywords):
            generate([], KBS)

    def test_missing_placeholder(self):
        with pytest.raises(BadTemplate):
            ProviderTemplate(name="bad", url_template="https://kbs.test/search")

    def test_double_placeholder(self):
        with pytest.raises(BadTemplate):
            ProviderTemplate(name="bad", url_template="https://x.test/{keywords}/{keywords}")

    def test_truncation_keeps_leading_keywords(self):
        provider = ProviderTemplate(name="kbs", url_template="https://kbs.test/?q={keywords}",
                                    joiner="+", max_keywords=2)
        query = generate(["one", "two", "three"], provider)
        assert query.keywords == ("one", "two")

    def test_deterministic(self):
        first = generate(["naïve", "c++", "multi word"], KBS)
        second = generate(["naïve", "c++", "multi word"], KBS)
        assert first == second

    @given(st.lists(
        st.text(min_size=1, max_size=12).filter(lambda s: s.strip()),
        min_size=1, max_size=8,
    ))
    def test_roundtrip_property(self, keywords):
        query = generate(keywords, KBS)
        assert decode_keywords(query.url, KBS) == list(query.keywords)
        split = urlsplit(query.url)
        assert split.scheme and split.netloc
        assert query.url.isascii()


class TestContextQueries:
    def test_root_empty(self, mini_enriched):
        assert context_queries(mini_enriched, ROOT_ID, [KBS]) == []

    def test_one_query_per_provider(self, mini_enriched):
        providers = [
            KBS,
            ProviderTemplate(name="kbs2", url_template="https://kbs2.test/?s={keywords}", joiner="+"),
            ProviderTemplate(name="kbs3", url_template="https://kbs3.test/?x={keywords}", joiner="+"),
        ]
        queries = context_queries(mini_enriched, "H.2", providers)
        assert [q.provider for q in queries] == ["kbs", "kbs2", "kbs3"]
        assert len({q.keywords for q in queries}) == 1

    def test_node_local_keywords_first(self, mini_enriched):
        ordered = ordered_cluster(mini_enriched, "D.3.2")
        assert ordered[:2] == ["classification", "language"]
        assert set(ordered) == {"classification", "language", "programming", "software"}

    def test_added_after_native_before_inherited(self, mini_enriched):
        enriched = add_keyword(mini_enriched, "D.3.2", "zzz", "folksonomy")
        ordered = ordered_cluster(enriched, "D.3.2")
        assert ordered[:3] == ["classification", "language", "zzz"]


class TestScholarFallback:
    def test_direct_uri_wins(self):
        record = ArticleRecord(id="r", title="T", uri="http://doi.test/7")
        assert scholar_fallback(record) == DirectUri(uri="http://doi.test/7")

    def test_quoted_title_plus_surname(self):
        record = ArticleRecord(id="r", title="Managing taxonomies in relational databases",
                               authors=("Jane Doe", "Al Smith"))
        query = scholar_fallback(record)
        decoded = unquote(query.url)
        assert '"Managing taxonomies in relational databases"' in decoded
        assert query.keywords[-1] == "Doe"

    def test_no_authors_title_only(self):
        record = ArticleRecord(id="r", title="Lonely title")
        query = scholar_fallback(record)
        assert list(query.keywords) == ['"Lonely title"']
        assert query.provider == SCHOLAR_PROVIDER.name


class TestExportBibtex:
    def test_full_record_five_fields(self):
        record = ArticleRecord(id="k1", title="A Title", year=2008, context="Journal X",
                               authors=("Jane Doe",), uri="http://x.test/1")
        entry = export_bibtex(record)
        for field in ("title", "author", "year", "journal", "url"):
            assert f"{field} = " in entry
        assert entry.startswith("@article{k1,")

    def test_year_omitted_when_unknown(self):
        entry = export_bibtex(ArticleRecord(id="k2", title="T"))
        assert "year" not in entry

    def test_proceedings_context_switches_type(self):
        record = ArticleRecord(id="k3", title="T", context="SIGIR Conference Proceedings")
        entry = export_bibtex(record)
        assert entry.startswith("@inproceedings{k3,")
        assert "booktitle = " in entry

    def test_brace_roundtrip_through_parser(self):
        record = ArticleRecord(id="k4", title="Braces { and } inside", year=2001,
                               context="Venue", authors=("Ann Lee",))
        reparsed, warnings = parse_bibtex(export_bibtex(record))
        assert not warnings
        assert reparsed[0].title == record.title
        assert reparsed[0].authors == record.authors
        assert reparsed[0].year == record.year
        assert reparsed[0].context == record.context

    def test_parse_export_identity_on_fixture(self, corpus50_records):
        for record in corpus50_records:
            reparsed, warnings = parse_bibtex(export_bibtex(record))
            assert not warnings and len(reparsed) == 1
            out = reparsed[0]
            assert (out.id, out.title, out.year, out.context, out.authors, out.uri) == (
                record.id, record.title, record.year, record.context, record.authors, record.uri,
            )


class TestEmbeddedMetadata:
    def test_two_creators(self):
        record = ArticleRecord(id="r", title="T", authors=("A One", "B Two"))
        pairs = export_embedded_metadata(record)
        assert pairs.count(("DC.creator", "A One")) == 1
        assert pairs.count(("DC.creator", "B Two")) == 1

    def test_minimal_record(self):
        assert export_embedded_metadata(ArticleRecord(id="r", title="Only")) == [("DC.title", "Only")]

    def test_title_verbatim(self):
        title = "Managing taxonomies in relational databases"
        pairs = export_embedded_metadata(ArticleRecord(id="r", title=title, year=2008))
        assert ("DC.title", title) in pairs
        assert ("DC.date", "2008") in pairs
