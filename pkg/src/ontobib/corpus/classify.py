"""Title classification into ontology nodes, and orphan promotion.

Scoring is plain lemma overlap between a title and each topic's keyword
cluster (keyword weighting is an open hook, deliberately not implemented).
Unclassifiable titles are parked provisionally in a Miscellaneous/General
bucket; once enough of them share vocabulary they are promoted into a new
branch of their own.
"""

from __future__ import annotations

from ontobib.ontology.model import (
    KIND_DESCRIPTOR,
    KIND_GENERAL,
    KIND_MISCELLANEOUS,
    KIND_REGULAR,
    ROOT_ID,
    Ontology,
)
from ontobib.ontology.ops import add_child_node, general_bucket, keyword_cluster
from ontobib.corpus.model import (
    STATUS_PERMANENT,
    STATUS_PROVISIONAL,
    ArticleRecord,
    PseudoCorpus,
    replace_records,
)


def _bucket_of(ontology: Ontology, node_id: str) -> str | None:
    """Miscellaneous (else General) child of a node, walking up if needed."""
    current: str | None = node_id
    while current is not None:
        misc = None
        general = None
        for child in ontology.children_of(current):
            kind = ontology.nodes[child].kind
            if kind == KIND_MISCELLANEOUS and misc is None:
                misc = child
            elif kind == KIND_GENERAL and general is None:
                general = child
        if misc is not None:
            return misc
        if general is not None:
            return general
        current = ontology.parent_of(current)
    return None


def classify(record: ArticleRecord, ontology: Ontology) -> list[tuple[str, str]]:
    """Assign a title to its best-overlapping topic nodes.

    Every regular node tied at the maximum positive overlap is assigned
    permanently (multiple assignments deliberately feed the proximity
    linker). With no overlap anywhere among regular nodes, the record is
    parked provisionally: in the bucket nearest the best-overlapping
    non-regular node (descriptor leaf or existing bucket) when one matches,
    else in ROOT's General bucket.
    """
    title_lemmas = record.title_lemmas()
    best_score = 0
    best_nodes: list[str] = []
    for node_id, node in ontology.nodes.items():
        if node.kind != KIND_REGULAR or node_id == ROOT_ID:
            continue
        score = len(title_lemmas & keyword_cluster(ontology, node_id))
        if score > best_score:
            best_score = score
            best_nodes = [node_id]
        elif score == best_score and score > 0:
            best_nodes.append(node_id)
    if best_score > 0:
        return [(node_id, STATUS_PERMANENT) for node_id in sorted(best_nodes)]

    anchor: str | None = None
    anchor_score = 0
    for node_id, node in sorted(ontology.nodes.items()):
        if node.kind == KIND_REGULAR:
            continue
        score = len(title_lemmas & keyword_cluster(ontology, node_id))
        if score > anchor_score:
            anchor_score = score
            anchor = node_id
    bucket: str | None = None
    if anchor is not None:
        node = ontology.nodes[anchor]
        if node.kind in (KIND_GENERAL, KIND_MISCELLANEOUS):
            bucket = anchor
        elif node.kind == KIND_DESCRIPTOR:
            described = ontology.described_nodes(anchor)
            if described:
                bucket = _bucket_of(ontology, described[0])
    if bucket is None:
        bucket = general_bucket(ontology, ROOT_ID)
    if bucket is None:
        raise ValueError("ontology has no General bucket under ROOT; run ensure_general_bucket first")
    return [(bucket, STATUS_PROVISIONAL)]


def reclassify_orphans(corpus: PseudoCorpus, ontology: Ontology,
                       min_cluster: int = 3, min_shared: int = 2) -> tuple[Ontology, PseudoCorpus]:
    """Promote groups of provisional records into new permanent branches.

    Within each bucket, records are scanned in id order; a greedy pass
    collects every later record that keeps at least `min_shared` lemmas in
    the running intersection. Groups of at least `min_cluster` records
    spawn a new child (labelled with the shared lemmas) under the bucket's
    parent and move there permanently; everything else stays untouched.
    """
    if min_cluster < 2 or min_shared < 2:
        raise ValueError("min_cluster and min_shared must both be >= 2")
    by_bucket: dict[str, list[ArticleRecord]] = {}
    for record in corpus.records.values():
        if record.is_provisional():
            bucket = record.assignments[0][0]
            by_bucket.setdefault(bucket, []).append(record)

    changed: dict[str, ArticleRecord] = {}
    for bucket in sorted(by_bucket):
        pending = sorted(by_bucket[bucket], key=lambda r: r.id)
        consumed: set[str] = set()
        for seed in list(pending):
            if seed.id in consumed:
                continue
            group = [seed]
            shared = set(seed.title_lemmas())
            for candidate in pending:
                if candidate.id == seed.id or candidate.id in consumed:
                    continue
                narrowed = shared & candidate.title_lemmas()
                if len(narrowed) >= min_shared:
                    group.append(candidate)
                    shared = narrowed
            if len(group) < min_cluster or len(shared) < min_shared:
                continue
            parent = ontology.parent_of(bucket) or ROOT_ID
            ontology, new_node = add_child_node(ontology, parent, " ".join(sorted(shared)))
            for member in group:
                consumed.add(member.id)
                changed[member.id] = member.with_assignments([(new_node, STATUS_PERMANENT)])
    if not changed:
        return ontology, corpus
    return ontology, replace_records(corpus, changed)
