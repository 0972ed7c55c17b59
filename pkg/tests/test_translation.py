from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from ontobib.ontology import ORIGIN_FOLKSONOMY, UnknownNode
from ontobib.translation import (
    AlreadyClosed,
    EmptyText,
    FILTER_OPEN,
    GlossaryClient,
    NotCommitteeMember,
    QueryNotFound,
    SelfValidation,
    STATE_ACCEPTED,
    STATE_OPEN,
    STATE_REJECTED,
    TranslationFailure,
    TranslationRegistry,
    UnknownProposal,
    VERDICT_APPROVE,
    VERDICT_REJECT,
    VERDICT_REJECT_KEEP,
    feed,
    machine_translate_all,
    resolve_query,
)

COMMITTEE = {"m1", "m2", "m3"}


@pytest.fixture
def registry():
    return TranslationRegistry(COMMITTEE)


class FailingClient:
    def translate(self, text, source, target):
        raise RuntimeError("offline")


class TestGlossaryClient:
    def test_pinned_phrase(self):
        client = GlossaryClient.bundled()
        assert client.translate("Database Management") == "gestion de bases de données"

    def test_no_match_fails(self):
        client = GlossaryClient({"software": "logiciel"})
        with pytest.raises(TranslationFailure):
            client.translate("Quantum Butterflies")

    def test_longest_match_first(self):
        client = GlossaryClient({"data": "données", "data storage": "stockage de données"})
        assert client.translate("Data Storage") == "stockage de données"


class TestMachineTranslateAll:
    def test_translates_untranslated_nodes(self, mini_ontology):
        result = machine_translate_all(mini_ontology, "fr", GlossaryClient.bundled())
        by_node = {t.node: t for t in result.translations}
        assert by_node["H.2"].label == "gestion de bases de données"
        assert by_node["H.2"].status == "machine"
        assert not result.failures

    def test_validated_nodes_untouched(self, mini_ontology):
        result = machine_translate_all(
            mini_ontology, "fr", GlossaryClient.bundled(),
            already_validated={("H.2", "fr")},
        )
        assert "H.2" not in {t.node for t in result.translations}

    def test_failures_fall_back_to_english(self, mini_ontology):
        result = machine_translate_all(mini_ontology, "fr", FailingClient())
        assert len(result.failures) == len(result.translations)
        for translation in result.translations:
            assert translation.label == mini_ontology.node(translation.node).label
            assert translation.source == "mt-client"

    def test_descriptor_leaves_skipped(self, mini_enriched):
        result = machine_translate_all(mini_enriched, "fr", GlossaryClient.bundled())
        assert "C++" not in {t.node for t in result.translations}


class TestProposals:
    def test_submit_creates_open_proposal_and_live_item(self, registry, mini_ontology):
        proposal, item = registry.submit_proposal(
            "I.3.3", "fr", "rendu non-photorealiste", "u7", mini_ontology,
        )
        assert proposal.state == STATE_OPEN
        assert item.guid == proposal.id and not item.closed

    def test_empty_text_rejected(self, registry, mini_ontology):
        with pytest.raises(EmptyText):
            registry.submit_proposal("I.3.3", "fr", "   ", "u7", mini_ontology)

    def test_unknown_node(self, registry, mini_ontology):
        with pytest.raises(UnknownNode):
            registry.submit_proposal("Z.1", "fr", "texte", "u7", mini_ontology)

    def test_duplicate_submissions_get_distinct_ids(self, registry, mini_ontology):
        p1, _ = registry.submit_proposal("I.3.3", "fr", "même texte", "u7", mini_ontology)
        p2, _ = registry.submit_proposal("I.3.3", "fr", "même texte", "u7", mini_ontology)
        assert p1.id != p2.id

    def test_two_distinct_approvals_accept(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "rendu", "u7", mini_ontology)
        proposal, _ = registry.validate_proposal(proposal.id, "m1", VERDICT_APPROVE, mini_ontology)
        assert proposal.state == STATE_OPEN
        proposal, _ = registry.validate_proposal(proposal.id, "m1", VERDICT_APPROVE, mini_ontology)
        assert proposal.state == STATE_OPEN and proposal.validations == {"m1"}
        proposal, _ = registry.validate_proposal(proposal.id, "m2", VERDICT_APPROVE, mini_ontology)
        assert proposal.state == STATE_ACCEPTED
        assert registry.validated[("I.3.3", "fr")].label == "rendu"
        assert registry.feed_items[proposal.id].closed

    def test_acceptance_swaps_validated_label(self, registry, mini_ontology):
        p1, _ = registry.submit_proposal("I.3.3", "fr", "première", "u7", mini_ontology)
        registry.validate_proposal(p1.id, "m1", VERDICT_APPROVE, mini_ontology)
        registry.validate_proposal(p1.id, "m2", VERDICT_APPROVE, mini_ontology)
        p2, _ = registry.submit_proposal("I.3.3", "fr", "seconde", "u7", mini_ontology)
        registry.validate_proposal(p2.id, "m1", VERDICT_APPROVE, mini_ontology)
        registry.validate_proposal(p2.id, "m3", VERDICT_APPROVE, mini_ontology)
        assert registry.validated[("I.3.3", "fr")].label == "seconde"
        assert len([t for (node, lang), t in registry.validated.items() if node == "I.3.3"]) == 1

    def test_submitter_cannot_approve(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "m1", mini_ontology)
        with pytest.raises(SelfValidation):
            registry.validate_proposal(proposal.id, "m1", VERDICT_APPROVE, mini_ontology)

    def test_single_reject_closes(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "u7", mini_ontology)
        proposal, _ = registry.validate_proposal(proposal.id, "m2", VERDICT_REJECT, mini_ontology)
        assert proposal.state == STATE_REJECTED
        assert registry.feed_items[proposal.id].closed
        assert not registry.entries

    def test_reject_with_keep_creates_entry(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal(
            "I.3.3", "fr", "rendu non-photorealiste", "u7", mini_ontology,
        )
        proposal, ontology = registry.validate_proposal(
            proposal.id, "m2", VERDICT_REJECT_KEEP, mini_ontology,
        )
        assert proposal.state == STATE_REJECTED
        assert len(registry.entries) == 1
        added = ontology.node("I.3.3").added_keywords
        assert ("rendu", ORIGIN_FOLKSONOMY) in added

    def test_closed_rejects_all_events(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "u7", mini_ontology)
        registry.validate_proposal(proposal.id, "m2", VERDICT_REJECT, mini_ontology)
        for member, verdict in (("m1", VERDICT_APPROVE), ("m3", VERDICT_REJECT)):
            with pytest.raises(AlreadyClosed):
                registry.validate_proposal(proposal.id, member, verdict, mini_ontology)

    def test_non_committee_member(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "u7", mini_ontology)
        with pytest.raises(NotCommitteeMember):
            registry.validate_proposal(proposal.id, "intruder", VERDICT_APPROVE, mini_ontology)

    def test_unknown_proposal(self, registry, mini_ontology):
        with pytest.raises(UnknownProposal):
            registry.validate_proposal("p99", "m1", VERDICT_APPROVE, mini_ontology)


class TestAlternativeEntries:
    def test_entry_is_searchable_but_label_unchanged(self, registry, mini_ontology):
        before = mini_ontology.node("I.3.3").label
        _, ontology = registry.register_alternative_entry(
            "I.3.3", "fr", "rendu non-photorealiste", mini_ontology,
        )
        assert ontology.node("I.3.3").label == before
        assert resolve_query("rendu non photo-réaliste", "fr", ontology, registry) == ["I.3.3"]

    def test_duplicate_registration_idempotent(self, registry, mini_ontology):
        _, ontology = registry.register_alternative_entry("I.3.3", "fr", "rendu expressif", mini_ontology)
        _, ontology2 = registry.register_alternative_entry("I.3.3", "fr", "rendu expressif", ontology)
        assert len(registry.entries) == 1
        assert ontology2 is ontology

    def test_both_phrases_resolve(self, registry, mini_ontology):
        _, ontology = registry.register_alternative_entry(
            "I.3.3", "fr", "rendu non-photorealiste", mini_ontology,
        )
        _, ontology = registry.register_alternative_entry("I.3.3", "fr", "rendu expressif", ontology)
        assert resolve_query("rendu non-photorealiste", "fr", ontology, registry) == ["I.3.3"]
        assert resolve_query("rendu expressif", "fr", ontology, registry) == ["I.3.3"]


class TestResolveQuery:
    def test_notfound_message(self, registry, mini_ontology):
        with pytest.raises(QueryNotFound) as err:
            resolve_query("rendu non photo-réaliste", "fr", mini_ontology, registry)
        assert err.value.message == '"rendu non photo-réaliste" does not exist in French in the ACM ontology'

    def test_exact_label_dominance(self, registry, mini_ontology):
        for node_id, node in mini_ontology.nodes.items():
            if node_id == "ROOT":
                continue
            labels = [n.label.lower() for n in mini_ontology.nodes.values()]
            if labels.count(node.label.lower()) > 1:
                continue
            assert resolve_query(node.label, "en", mini_ontology, registry)[0] == node_id

    def test_english_overlap_ranking(self, registry, mini_ontology):
        assert resolve_query("picture image generation", "en", mini_ontology, registry)[0] == "I.3.3"

    def test_validated_label_matches_exactly(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("H.2", "fr", "gestion de bases de données", "u1", mini_ontology)
        registry.validate_proposal(proposal.id, "m1", VERDICT_APPROVE, mini_ontology)
        registry.validate_proposal(proposal.id, "m2", VERDICT_APPROVE, mini_ontology)
        assert resolve_query("Gestion de bases de données", "fr", mini_ontology, registry) == ["H.2"]

    def test_unknown_language(self, registry, mini_ontology):
        from ontobib.textpipe import UnknownLanguage
        with pytest.raises(UnknownLanguage):
            resolve_query("x", "de", mini_ontology, registry)


class TestFeed:
    def _parse(self, document):
        root = ET.fromstring(document)
        assert root.tag == "rss" and root.get("version") == "2.0"
        channel = root.find("channel")
        assert channel.findtext("title") and channel.findtext("link") is not None
        assert channel.findtext("description") is not None
        return channel.findall("item")

    def test_empty_feed_is_valid(self, registry):
        assert self._parse(feed(registry)) == []

    def test_open_item_guid_matches_proposal(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "u7", mini_ontology)
        items = self._parse(feed(registry, FILTER_OPEN))
        assert len(items) == 1
        assert items[0].findtext("guid") == proposal.id
        assert items[0].findtext("title")
        assert items[0].findtext("pubDate")

    def test_accepted_proposal_absent_from_open_filter(self, registry, mini_ontology):
        proposal, _ = registry.submit_proposal("I.3.3", "fr", "texte", "u7", mini_ontology)
        registry.validate_proposal(proposal.id, "m1", VERDICT_APPROVE, mini_ontology)
        registry.validate_proposal(proposal.id, "m2", VERDICT_APPROVE, mini_ontology)
        assert self._parse(feed(registry, FILTER_OPEN)) == []
        assert len(self._parse(feed(registry, "all"))) == 1


class TestReplay:
    def test_replay_rebuilds_state(self, registry, mini_ontology):
        ontology = mini_ontology
        p1, _ = registry.submit_proposal("I.3.3", "fr", "rendu non-photorealiste", "u7", ontology)
        _, ontology = registry.validate_proposal(p1.id, "m2", VERDICT_REJECT_KEEP, ontology)
        p2, _ = registry.submit_proposal("H.2", "fr", "gestion de bases de données", "u8", ontology)
        _, ontology = registry.validate_proposal(p2.id, "m1", VERDICT_APPROVE, ontology)
        _, ontology = registry.validate_proposal(p2.id, "m3", VERDICT_APPROVE, ontology)

        replayed, replayed_ontology = TranslationRegistry.replay(
            registry.events, COMMITTEE, mini_ontology,
        )
        assert {p.id: p.state for p in replayed.proposals.values()} == {
            p.id: p.state for p in registry.proposals.values()
        }
        assert replayed.validated == registry.validated
        assert replayed.entries == registry.entries
        assert {g: i.closed for g, i in replayed.feed_items.items()} == {
            g: i.closed for g, i in registry.feed_items.items()
        }
        assert replayed_ontology == ontology
        assert feed(replayed) == feed(registry)
