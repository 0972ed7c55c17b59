"""Ontology enrichment and query operations.

Everything here is a pure function from one ontology snapshot to the next
(or to a derived view); no-op calls return the input snapshot unchanged so
idempotence is observable through plain equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ontobib.ontology.model import (
    ARC_DESCRIPTOR,
    ARC_HIERARCHY,
    KIND_DESCRIPTOR,
    KIND_GENERAL,
    PROV_CCS,
    PROV_COOCCURRENCE,
    PROV_CORPUS,
    PROV_FOLKSONOMY,
    ROOT_ID,
    ImplicitDescriptor,
    Ontology,
    OntologyNode,
    SemanticArc,
    UnknownNode,
    keyword_endpoint,
    make_node,
    related_arc,
)


class UnknownCode(ValueError):
    """A descriptor references codes absent from the ontology; lists all offenders."""

    def __init__(self, offenders: list[tuple[str, str]]):
        listing = "; ".join(f"{term!r} -> {code}" for term, code in offenders)
        super().__init__(f"descriptors reference unknown codes: {listing}")
        self.offenders = offenders


def attach_descriptors(ontology: Ontology, descriptors: list[ImplicitDescriptor]) -> Ontology:
    """Attach proper-noun descriptors as leaves of the topic tree.

    Each term becomes one descriptor-leaf node with an implicitDescriptorOf
    arc per category code; co-occurring categories (a descriptor citing two
    or more codes) are cross-linked with isRelatedTo arcs. All codes are
    checked up front: on any unknown code the ontology is left untouched.
    """
    offenders = [
        (d.term, code)
        for d in descriptors
        for code in d.category_codes
        if code not in ontology.nodes or ontology.nodes[code].kind == KIND_DESCRIPTOR
    ]
    if offenders:
        raise UnknownCode(offenders)

    nodes = dict(ontology.nodes)
    arcs = set(ontology.arcs)
    for descriptor in descriptors:
        term = descriptor.term
        existing = nodes.get(term)
        if existing is not None and existing.kind != KIND_DESCRIPTOR:
            raise ValueError(f"descriptor term {term!r} collides with node {term!r}")
        for code in descriptor.category_codes:
            arcs.add(SemanticArc(ARC_DESCRIPTOR, term, code, PROV_CCS))
        for a, b in itertools.combinations(descriptor.category_codes, 2):
            if a != b:
                arcs.add(related_arc(a, b, PROV_COOCCURRENCE))
        described = {arc.target for arc in arcs
                     if arc.kind == ARC_DESCRIPTOR and arc.source == term}
        depth = 1 + min(nodes[code].depth for code in described)
        leaf = make_node(term, term, depth=depth, kind=KIND_DESCRIPTOR)
        if existing is not None:
            leaf = OntologyNode(
                id=leaf.id, label=leaf.label, kind=leaf.kind, depth=depth,
                native_keywords=leaf.native_keywords,
                added_keywords=existing.added_keywords,
            )
        nodes[term] = leaf
    return ontology.replace(nodes=nodes, arcs=frozenset(arcs))


def add_keyword(ontology: Ontology, node_id: str, lemma: str, origin: str) -> Ontology:
    """Attach an added keyword to a node; idempotent on the lemma.

    Added keywords are searchable (they join the node's cluster) but never
    change the displayed label. When the lemma coincides with a descriptor
    term's lemma, a folksonomy isRelatedTo arc ties the bare keyword to the
    descriptor leaf.
    """
    node = ontology.node(node_id)
    if lemma in node.added_lemmas():
        return ontology
    nodes = dict(ontology.nodes)
    nodes[node_id] = OntologyNode(
        id=node.id, label=node.label, kind=node.kind, depth=node.depth,
        native_keywords=node.native_keywords,
        added_keywords=node.added_keywords | {(lemma, origin)},
    )
    arcs = set(ontology.arcs)
    for leaf in ontology.descriptor_leaves():
        if lemma in leaf.native_keywords:
            arcs.add(related_arc(keyword_endpoint(lemma), leaf.id, PROV_FOLKSONOMY))
    return ontology.replace(nodes=nodes, arcs=frozenset(arcs))


def keyword_cluster(ontology: Ontology, node_id: str) -> set[str]:
    """Keywords of a node and everything it inherits from superior nodes.

    ROOT contributes nothing (its cluster is empty); descriptor leaves
    inherit through every node they describe.
    """
    node = ontology.node(node_id)
    if node_id == ROOT_ID:
        return set()
    cluster: set[str] = set()
    stack = [node_id]
    seen: set[str] = set()
    while stack:
        current = stack.pop()
        if current in seen or current == ROOT_ID:
            continue
        seen.add(current)
        entry = ontology.nodes[current]
        cluster |= entry.all_keywords()
        parent = ontology.parent_of(current)
        if parent is not None:
            stack.append(parent)
        elif entry.kind == KIND_DESCRIPTOR:
            stack.extend(ontology.described_nodes(current))
    return cluster


def proximity(ontology: Ontology, a: str, b: str) -> float:
    """Jaccard coefficient of two nodes' keyword clusters, in [0, 1]."""
    cluster_a = keyword_cluster(ontology, a)
    cluster_b = keyword_cluster(ontology, b)
    union = cluster_a | cluster_b
    if not union:
        return 0.0
    return len(cluster_a & cluster_b) / len(union)


def add_proximity_arcs(ontology: Ontology,
                       corpus_evidence: list[tuple[str, list[str]]],
                       threshold: int = 1) -> Ontology:
    """Cross-link node pairs that enough distinct articles were assigned to.

    An article indexed in two branches is evidence the branches are near;
    pairs co-assigned in at least `threshold` distinct articles gain an
    isRelatedTo arc with corpus-proximity provenance.
    """
    articles_for_pair: dict[tuple[str, str], set[str]] = {}
    for article_id, node_ids in corpus_evidence:
        for node_id in node_ids:
            if node_id not in ontology.nodes:
                raise UnknownNode(node_id)
        for a, b in itertools.combinations(sorted(set(node_ids)), 2):
            articles_for_pair.setdefault((a, b), set()).add(article_id)
    arcs = set(ontology.arcs)
    for (a, b), articles in articles_for_pair.items():
        if len(articles) >= threshold:
            arcs.add(related_arc(a, b, PROV_CORPUS))
    return ontology.replace(arcs=frozenset(arcs))


@dataclass(frozen=True)
class FocusView:
    """Subgraph around a focus node: nodes within a hop budget, the spine
    to ROOT, and every arc internal to the selection."""

    focus: str
    nodes: dict[str, OntologyNode]
    arcs: frozenset[SemanticArc]
    rings: dict[str, int]  # hierarchy hop distance from the focus


def _tree_neighbors(ontology: Ontology, node_id: str) -> list[str]:
    neighbors = ontology.children_of(node_id)
    neighbors += ontology.descriptors_of(node_id)
    parent = ontology.parent_of(node_id)
    if parent is not None:
        neighbors.append(parent)
    if ontology.nodes[node_id].kind == KIND_DESCRIPTOR:
        neighbors += ontology.described_nodes(node_id)
    return neighbors


def _upward(ontology: Ontology, node_id: str) -> str | None:
    parent = ontology.parent_of(node_id)
    if parent is not None:
        return parent
    if ontology.nodes[node_id].kind == KIND_DESCRIPTOR:
        described = ontology.described_nodes(node_id)
        if described:
            return described[0]
    return None


def focus_context(ontology: Ontology, focus: str, radius: int = 1) -> FocusView:
    """Focus+context selection: everything within `radius` tree hops of the
    focus plus the path up to ROOT, with hop distances for layout."""
    ontology.node(focus)
    if radius < 1:
        raise ValueError("radius must be >= 1")
    rings = {focus: 0}
    frontier = [focus]
    for hop in range(1, radius + 1):
        next_frontier: list[str] = []
        for node_id in frontier:
            for neighbor in _tree_neighbors(ontology, node_id):
                if neighbor not in rings:
                    rings[neighbor] = hop
                    next_frontier.append(neighbor)
        frontier = next_frontier
    # Spine to ROOT: keeps the global view anchored however deep the focus is.
    current, hops = focus, 0
    while current != ROOT_ID:
        up = _upward(ontology, current)
        if up is None:
            break
        hops += 1
        if up not in rings:
            rings[up] = hops
        current = up
    nodes = {node_id: ontology.nodes[node_id] for node_id in rings}
    arcs = frozenset(
        arc for arc in ontology.arcs
        if arc.source in nodes and arc.target in nodes
    )
    return FocusView(focus=focus, nodes=nodes, arcs=arcs, rings=rings)


def next_synthetic_code(ontology: Ontology, parent_id: str) -> str:
    """Next promoted-branch code under a parent: ``<parent>.X<counter>``."""
    counter = 1
    while f"{parent_id}.X{counter}" in ontology.nodes:
        counter += 1
    return f"{parent_id}.X{counter}"


def add_child_node(ontology: Ontology, parent_id: str, label: str) -> tuple[Ontology, str]:
    """Create a new child under `parent_id` with a synthetic code."""
    parent = ontology.node(parent_id)
    code = next_synthetic_code(ontology, parent_id)
    nodes = dict(ontology.nodes)
    nodes[code] = make_node(code, label, depth=parent.depth + 1)
    arcs = set(ontology.arcs)
    arcs.add(SemanticArc(ARC_HIERARCHY, parent_id, code, PROV_CORPUS))
    return ontology.replace(nodes=nodes, arcs=frozenset(arcs)), code


def general_bucket(ontology: Ontology, parent_id: str = ROOT_ID) -> str | None:
    """Id of the general child of a node, if one exists."""
    for child in ontology.children_of(parent_id):
        if ontology.nodes[child].kind == KIND_GENERAL:
            return child
    return None


def ensure_general_bucket(ontology: Ontology, parent_id: str = ROOT_ID) -> tuple[Ontology, str]:
    """Materialize a General child under a node (ROOT by default).

    Source taxonomies do not ship a general bucket at the root, but the
    classifier needs one as the landing place for otherwise unclassifiable
    titles; this is an explicit bootstrap step so plain parsing stays a
    faithful image of the source document.
    """
    existing = general_bucket(ontology, parent_id)
    if existing is not None:
        return ontology, existing
    return add_child_node(ontology, parent_id, "General")
