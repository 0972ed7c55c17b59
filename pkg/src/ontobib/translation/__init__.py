"""Bilingual labels: MT bootstrap, community moderation, CLIR resolution."""

from ontobib.translation.feed import FILTER_ALL, FILTER_OPEN, feed
from ontobib.translation.mt import (
    ClientUnavailable,
    GlossaryClient,
    MachineTranslationResult,
    TranslationClient,
    TranslationFailure,
    machine_translate_all,
)
from ontobib.translation.registry import (
    AlreadyClosed,
    AlternativeEntry,
    EmptyText,
    FeedItem,
    NodeTranslation,
    NotCommitteeMember,
    SelfValidation,
    STATE_ACCEPTED,
    STATE_OPEN,
    STATE_REJECTED,
    TranslationProposal,
    TranslationRegistry,
    UnknownProposal,
    VERDICT_APPROVE,
    VERDICT_REJECT,
    VERDICT_REJECT_KEEP,
)
from ontobib.translation.resolve import (
    LANGUAGE_NAMES,
    QueryNotFound,
    notfound_message,
    resolve_query,
)

__all__ = [
    "AlreadyClosed", "AlternativeEntry", "ClientUnavailable", "EmptyText",
    "FILTER_ALL", "FILTER_OPEN", "FeedItem", "GlossaryClient", "LANGUAGE_NAMES",
    "MachineTranslationResult", "NodeTranslation", "NotCommitteeMember",
    "QueryNotFound", "STATE_ACCEPTED", "STATE_OPEN", "STATE_REJECTED",
    "SelfValidation", "TranslationClient", "TranslationFailure",
    "TranslationProposal", "TranslationRegistry", "UnknownProposal",
    "VERDICT_APPROVE", "VERDICT_REJECT", "VERDICT_REJECT_KEEP",
    "feed", "machine_translate_all", "notfound_message", "resolve_query",
]
