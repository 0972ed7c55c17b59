"""Community translation workflow: proposals, two-validator moderation,
alternative search entries, and the append-only event log they replay from.

A proposal stays open until two distinct committee members (never the
submitter) approve it, at which point it atomically becomes the node's
validated label; a single committee reject closes it. A rejected proposal
can still live on as a searchable alternative entry when the committee
judges it a specification rather than a translation (reject-with-keep).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from ontobib import textpipe
from ontobib.ontology.model import ORIGIN_FOLKSONOMY, Ontology
from ontobib.ontology.ops import add_keyword

STATUS_MACHINE = "machine"
STATUS_PROPOSED = "proposed"
STATUS_VALIDATED = "validated"

SOURCE_MT = "mt-client"
SOURCE_COMMUNITY = "community"

STATE_OPEN = "open"
STATE_ACCEPTED = "accepted"
STATE_REJECTED = "rejected"

VERDICT_APPROVE = "approve"
VERDICT_REJECT = "reject"
VERDICT_REJECT_KEEP = "reject-with-keep"
VERDICTS = frozenset({VERDICT_APPROVE, VERDICT_REJECT, VERDICT_REJECT_KEEP})

REQUIRED_APPROVALS = 2


class UnknownProposal(KeyError):
    def __init__(self, proposal_id: str):
        super().__init__(proposal_id)
        self.proposal_id = proposal_id


class NotCommitteeMember(PermissionError):
    def __init__(self, member: str):
        super().__init__(f"{member!r} is not a committee member")
        self.member = member


class AlreadyClosed(ValueError):
    def __init__(self, proposal_id: str, state: str):
        super().__init__(f"proposal {proposal_id!r} is already {state}")
        self.proposal_id = proposal_id


class SelfValidation(ValueError):
    def __init__(self, proposal_id: str, member: str):
        super().__init__(f"{member!r} may not approve their own proposal {proposal_id!r}")
        self.proposal_id = proposal_id


class EmptyText(ValueError):
    pass


@dataclass(frozen=True)
class NodeTranslation:
    node: str
    language: str
    label: str
    status: str
    source: str


@dataclass
class TranslationProposal:
    id: str
    node: str
    language: str
    text: str
    submitter: str
    validations: set[str] = field(default_factory=set)
    state: str = STATE_OPEN


@dataclass(frozen=True)
class AlternativeEntry:
    node: str
    language: str
    text: str
    lemmas: frozenset[str]


@dataclass
class FeedItem:
    guid: str
    title: str
    description: str
    pub_date: datetime
    closed: bool = False


def _now() -> datetime:
    return datetime.now(timezone.utc)


def _parse_ts(value: str) -> datetime:
    return datetime.fromisoformat(value)


class TranslationRegistry:
    """Mutable translation state behind the portal's single-writer lock.

    Every mutation appends an event to `events`; `replay` rebuilds an
    identical registry (and re-applies folksonomy keywords to the ontology)
    from a stored event sequence.
    """

    def __init__(self, committee: set[str] | list[str] = ()):  # noqa: B006 - copied
        self.committee: set[str] = set(committee)
        self.machine: dict[tuple[str, str], NodeTranslation] = {}
        self.validated: dict[tuple[str, str], NodeTranslation] = {}
        self.proposals: dict[str, TranslationProposal] = {}
        self.entries: list[AlternativeEntry] = []
        self.feed_items: dict[str, FeedItem] = {}
        self.events: list[dict] = []
        self._counter = 0

    # -- display ---------------------------------------------------------

    def label_for(self, node_id: str, language: str, ontology: Ontology) -> str:
        """Displayed label: validated beats machine beats the English label."""
        node = ontology.node(node_id)
        if language == "en":
            return node.label
        translation = self.validated.get((node_id, language)) or self.machine.get((node_id, language))
        return translation.label if translation is not None else node.label

    def set_machine(self, translation: NodeTranslation) -> None:
        key = (translation.node, translation.language)
        if key not in self.validated:
            self.machine[key] = translation

    # -- proposals ---------------------------------------------------------

    def submit_proposal(self, node_id: str, language: str, text: str, submitter: str,
                        ontology: Ontology, now: datetime | None = None,
                        proposal_id: str | None = None,
                        record: bool = True) -> tuple[TranslationProposal, FeedItem]:
        ontology.node(node_id)
        text = text.strip()
        if not text:
            raise EmptyText("proposal text must not be empty")
        when = now or _now()
        if proposal_id is None:
            self._counter += 1
            proposal_id = f"p{self._counter}"
        else:
            number = int(proposal_id[1:]) if proposal_id[1:].isdigit() else 0
            self._counter = max(self._counter, number)
        proposal = TranslationProposal(
            id=proposal_id, node=node_id, language=language, text=text, submitter=submitter,
        )
        item = FeedItem(
            guid=proposal_id,
            title=f"Translation proposal for {node_id} ({language})",
            description=f"{text} — proposed by {submitter}",
            pub_date=when,
        )
        self.proposals[proposal_id] = proposal
        self.feed_items[proposal_id] = item
        if record:
            self.events.append({
                "event": "submitted", "proposal_id": proposal_id, "node": node_id,
                "language": language, "text": text, "submitter": submitter,
                "ts": when.isoformat(),
            })
        return proposal, item

    def validate_proposal(self, proposal_id: str, member: str, verdict: str,
                          ontology: Ontology,
                          record: bool = True) -> tuple[TranslationProposal, Ontology]:
        if verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {verdict!r}")
        proposal = self.proposals.get(proposal_id)
        if proposal is None:
            raise UnknownProposal(proposal_id)
        if member not in self.committee:
            raise NotCommitteeMember(member)
        if proposal.state != STATE_OPEN:
            raise AlreadyClosed(proposal_id, proposal.state)

        if verdict == VERDICT_APPROVE:
            if member == proposal.submitter:
                raise SelfValidation(proposal_id, member)
            if member not in proposal.validations:
                proposal.validations.add(member)
                if len(proposal.validations) >= REQUIRED_APPROVALS:
                    proposal.state = STATE_ACCEPTED
                    self.validated[(proposal.node, proposal.language)] = NodeTranslation(
                        node=proposal.node, language=proposal.language, label=proposal.text,
                        status=STATUS_VALIDATED, source=SOURCE_COMMUNITY,
                    )
                    self.machine.pop((proposal.node, proposal.language), None)
                    self._close_feed(proposal_id)
            if record:
                self.events.append({
                    "event": "validated", "proposal_id": proposal_id, "member": member,
                    "ts": _now().isoformat(),
                })
            return proposal, ontology

        proposal.state = STATE_REJECTED
        self._close_feed(proposal_id)
        keep = verdict == VERDICT_REJECT_KEEP
        if keep:
            _, ontology = self.register_alternative_entry(
                proposal.node, proposal.language, proposal.text, ontology, record=False,
            )
        if record:
            self.events.append({
                "event": "rejected", "proposal_id": proposal_id, "member": member,
                "keep": keep, "ts": _now().isoformat(),
            })
        return proposal, ontology

    def _close_feed(self, guid: str) -> None:
        item = self.feed_items.get(guid)
        if item is not None:
            item.closed = True

    # -- alternative entries ----------------------------------------------

    def register_alternative_entry(self, node_id: str, language: str, text: str,
                                   ontology: Ontology,
                                   record: bool = True) -> tuple[AlternativeEntry, Ontology]:
        """Store a searchable alternative phrasing for a node.

        Browsing labels are untouched; the entry's lemmas also become
        folksonomy keywords of the node so plain keyword search finds it.
        Registering an identical entry twice is a no-op.
        """
        ontology.node(node_id)
        text = text.strip()
        if not text:
            raise EmptyText("alternative entry text must not be empty")
        lemmas = frozenset(textpipe.extract_keywords(text, language))
        entry = AlternativeEntry(node=node_id, language=language, text=text, lemmas=lemmas)
        if entry not in self.entries:
            self.entries.append(entry)
        for lemma in sorted(lemmas):
            ontology = add_keyword(ontology, node_id, lemma, ORIGIN_FOLKSONOMY)
        if record:
            self.events.append({
                "event": "entry", "node": node_id, "language": language, "text": text,
                "ts": _now().isoformat(),
            })
        return entry, ontology

    def entries_for(self, node_id: str, language: str | None = None) -> list[AlternativeEntry]:
        return [e for e in self.entries
                if e.node == node_id and (language is None or e.language == language)]

    def clone(self) -> "TranslationRegistry":
        """Independent copy, so published snapshots stay frozen while the
        writer mutates the next one."""
        dup = TranslationRegistry(self.committee)
        dup.machine = dict(self.machine)
        dup.validated = dict(self.validated)
        dup.proposals = {
            pid: TranslationProposal(
                id=p.id, node=p.node, language=p.language, text=p.text,
                submitter=p.submitter, validations=set(p.validations), state=p.state,
            )
            for pid, p in self.proposals.items()
        }
        dup.entries = list(self.entries)
        dup.feed_items = {
            guid: FeedItem(guid=i.guid, title=i.title, description=i.description,
                           pub_date=i.pub_date, closed=i.closed)
            for guid, i in self.feed_items.items()
        }
        dup.events = list(self.events)
        dup._counter = self._counter
        return dup

    # -- replay -------------------------------------------------------------

    @classmethod
    def replay(cls, events: list[dict], committee: set[str] | list[str],
               ontology: Ontology) -> tuple["TranslationRegistry", Ontology]:
        """Rebuild registry state from a stored event sequence."""
        registry = cls(committee)
        for event in events:
            kind = event["event"]
            if kind == "submitted":
                registry.submit_proposal(
                    event["node"], event["language"], event["text"], event["submitter"],
                    ontology, now=_parse_ts(event["ts"]), proposal_id=event["proposal_id"],
                    record=False,
                )
            elif kind == "validated":
                _, ontology = registry.validate_proposal(
                    event["proposal_id"], event["member"], VERDICT_APPROVE, ontology,
                    record=False,
                )
            elif kind == "rejected":
                verdict = VERDICT_REJECT_KEEP if event.get("keep") else VERDICT_REJECT
                _, ontology = registry.validate_proposal(
                    event["proposal_id"], event["member"], verdict, ontology, record=False,
                )
            elif kind == "entry":
                _, ontology = registry.register_alternative_entry(
                    event["node"], event["language"], event["text"], ontology, record=False,
                )
            else:
                raise ValueError(f"unknown event type {kind!r}")
            registry.events.append(event)
        return registry, ontology
