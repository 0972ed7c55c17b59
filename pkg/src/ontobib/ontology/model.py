"""Core ontology data model: nodes, typed arcs, immutable snapshots.

The ontology is a tree of topic nodes (dotted CCS-style codes) under a
synthetic ROOT, enriched with descriptor leaves and typed cross links.
Snapshots are immutable: every mutating operation builds a new `Ontology`
value with a bumped version, so readers never see a half-applied change.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ontobib import textpipe

ROOT_ID = "ROOT"
ROOT_LABEL = "computer science"

KIND_REGULAR = "regular"
KIND_GENERAL = "general"
KIND_MISCELLANEOUS = "miscellaneous"
KIND_DESCRIPTOR = "descriptor-leaf"
NODE_KINDS = frozenset({KIND_REGULAR, KIND_GENERAL, KIND_MISCELLANEOUS, KIND_DESCRIPTOR})

ARC_HIERARCHY = "hierarchy"
ARC_RELATED = "isRelatedTo"
ARC_DESCRIPTOR = "implicitDescriptorOf"
ARC_KINDS = frozenset({ARC_HIERARCHY, ARC_RELATED, ARC_DESCRIPTOR})

PROV_CCS = "ccs-source"
PROV_COOCCURRENCE = "descriptor-cooccurrence"
PROV_CORPUS = "corpus-proximity"
PROV_FOLKSONOMY = "folksonomy"
PROVENANCES = frozenset({PROV_CCS, PROV_COOCCURRENCE, PROV_CORPUS, PROV_FOLKSONOMY})

ORIGIN_SYSTEM = "system"
ORIGIN_FOLKSONOMY = "folksonomy"
KEYWORD_ORIGINS = frozenset({ORIGIN_SYSTEM, ORIGIN_FOLKSONOMY})

# Arc endpoints are node ids, except isRelatedTo arcs anchored on a bare
# keyword lemma; those endpoints carry this prefix so they can never be
# confused with a node id.
KEYWORD_ENDPOINT_PREFIX = "kw:"

# Codes: dotted segments under a single letter (or ROOT for synthetic
# buckets). "X<n>" segments mark branches promoted by the system rather
# than taken from the source taxonomy.
CODE_RE = re.compile(r"^(?:[A-K]|ROOT)(?:\.(?:\d+|[a-z]|X\d+))*$")


class UnknownNode(KeyError):
    def __init__(self, node_id: str):
        super().__init__(node_id)
        self.node_id = node_id

    def __str__(self) -> str:
        return f"unknown ontology node: {self.node_id!r}"


def keyword_endpoint(lemma: str) -> str:
    return KEYWORD_ENDPOINT_PREFIX + lemma


def is_keyword_endpoint(endpoint: str) -> bool:
    return endpoint.startswith(KEYWORD_ENDPOINT_PREFIX)


def parent_code(code: str) -> str | None:
    """Parent id derivable from a hierarchy code; None for ROOT itself."""
    if code == ROOT_ID:
        return None
    if "." not in code:
        return ROOT_ID
    return code.rsplit(".", 1)[0]


def kind_for_label(label: str) -> str:
    lowered = label.strip().lower()
    if lowered == "general":
        return KIND_GENERAL
    if lowered == "miscellaneous":
        return KIND_MISCELLANEOUS
    return KIND_REGULAR


@dataclass(frozen=True)
class OntologyNode:
    id: str
    label: str
    kind: str
    depth: int
    native_keywords: frozenset[str]
    added_keywords: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def added_lemmas(self) -> frozenset[str]:
        return frozenset(lemma for lemma, _ in self.added_keywords)

    def all_keywords(self) -> frozenset[str]:
        return self.native_keywords | self.added_lemmas()


def make_node(node_id: str, label: str, depth: int, kind: str | None = None) -> OntologyNode:
    """Build a node with native keywords recomputed from its label."""
    return OntologyNode(
        id=node_id,
        label=label,
        kind=kind if kind is not None else kind_for_label(label),
        depth=depth,
        native_keywords=frozenset(textpipe.extract_keywords(label, "en")),
    )


@dataclass(frozen=True, order=True)
class SemanticArc:
    kind: str
    source: str
    target: str
    provenance: str


def related_arc(a: str, b: str, provenance: str) -> SemanticArc:
    """Undirected isRelatedTo arc with canonically ordered endpoints."""
    if a == b:
        raise ValueError(f"isRelatedTo arc may not be a self-loop: {a!r}")
    lo, hi = sorted((a, b))
    return SemanticArc(kind=ARC_RELATED, source=lo, target=hi, provenance=provenance)


@dataclass(frozen=True)
class ImplicitDescriptor:
    """A proper-noun subject descriptor and the topic codes it specifies."""

    term: str
    category_codes: tuple[str, ...]


class Ontology:
    """Immutable ontology snapshot with eager adjacency indexes.

    `nodes` and `arcs` must not be mutated after construction; derived
    operations call :meth:`replace` to obtain the next version.
    """

    def __init__(self, nodes: dict[str, OntologyNode], arcs: frozenset[SemanticArc], version: int = 1):
        self.nodes = dict(nodes)
        self.arcs = frozenset(arcs)
        self.version = version
        self._parent: dict[str, str] = {}
        self._children: dict[str, list[str]] = {}
        self._described_by: dict[str, list[str]] = {}  # descriptor id -> category ids
        self._descriptors_at: dict[str, list[str]] = {}  # category id -> descriptor ids
        self._related: dict[str, set[str]] = {}
        for arc in self.arcs:
            if arc.kind == ARC_HIERARCHY:
                self._parent[arc.target] = arc.source
                self._children.setdefault(arc.source, []).append(arc.target)
            elif arc.kind == ARC_DESCRIPTOR:
                self._described_by.setdefault(arc.source, []).append(arc.target)
                self._descriptors_at.setdefault(arc.target, []).append(arc.source)
            elif arc.kind == ARC_RELATED:
                self._related.setdefault(arc.source, set()).add(arc.target)
                self._related.setdefault(arc.target, set()).add(arc.source)
        for index in (self._children, self._described_by, self._descriptors_at):
            for key in index:
                index[key].sort()

    def node(self, node_id: str) -> OntologyNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def __contains__(self, node_id: str) -> bool:
        return node_id in self.nodes

    def parent_of(self, node_id: str) -> str | None:
        return self._parent.get(node_id)

    def children_of(self, node_id: str) -> list[str]:
        return list(self._children.get(node_id, []))

    def described_nodes(self, descriptor_id: str) -> list[str]:
        return list(self._described_by.get(descriptor_id, []))

    def descriptors_of(self, node_id: str) -> list[str]:
        return list(self._descriptors_at.get(node_id, []))

    def related_neighbors(self, endpoint: str) -> list[str]:
        return sorted(self._related.get(endpoint, ()))

    def descriptor_leaves(self) -> list[OntologyNode]:
        return [n for n in self.nodes.values() if n.kind == KIND_DESCRIPTOR]

    def replace(self, nodes: dict[str, OntologyNode] | None = None,
                arcs: frozenset[SemanticArc] | None = None) -> "Ontology":
        """Next snapshot; returns self unchanged when nothing differs."""
        new_nodes = self.nodes if nodes is None else nodes
        new_arcs = self.arcs if arcs is None else frozenset(arcs)
        if new_nodes == self.nodes and new_arcs == self.arcs:
            return self
        return Ontology(new_nodes, new_arcs, self.version + 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return (self.version == other.version
                and self.nodes == other.nodes
                and self.arcs == other.arcs)

    def __repr__(self) -> str:
        return f"Ontology(nodes={len(self.nodes)}, arcs={len(self.arcs)}, version={self.version})"

    def validate(self) -> None:
        """Full-traversal structural check; raises ValueError on violation."""
        roots = [n for n in self.nodes.values() if n.id == ROOT_ID]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one ROOT, found {len(roots)}")
        for arc in self.arcs:
            for endpoint in (arc.source, arc.target):
                if not is_keyword_endpoint(endpoint) and endpoint not in self.nodes:
                    raise ValueError(f"arc endpoint {endpoint!r} is not a node")
            if arc.kind not in ARC_KINDS or arc.provenance not in PROVENANCES:
                raise ValueError(f"arc {arc} has unknown kind or provenance")
            if arc.kind == ARC_DESCRIPTOR:
                if self.nodes[arc.source].kind != KIND_DESCRIPTOR:
                    raise ValueError(f"implicitDescriptorOf source {arc.source!r} is not a descriptor leaf")
                if self.nodes[arc.target].kind == KIND_DESCRIPTOR:
                    raise ValueError(f"implicitDescriptorOf target {arc.target!r} is a descriptor leaf")
            if arc.kind == ARC_RELATED and arc.source >= arc.target:
                raise ValueError(f"isRelatedTo arc {arc} endpoints are not canonically ordered")
        hierarchy_children: dict[str, int] = {}
        for arc in self.arcs:
            if arc.kind == ARC_HIERARCHY:
                hierarchy_children[arc.target] = hierarchy_children.get(arc.target, 0) + 1
        for node in self.nodes.values():
            if node.kind == KIND_DESCRIPTOR:
                if node.id in hierarchy_children:
                    raise ValueError(f"descriptor leaf {node.id!r} has a hierarchy parent")
                if self.children_of(node.id):
                    raise ValueError(f"descriptor leaf {node.id!r} has children")
                continue
            if node.id == ROOT_ID:
                if node.depth != 0 or node.id in hierarchy_children:
                    raise ValueError("ROOT must have depth 0 and no parent")
                continue
            if hierarchy_children.get(node.id, 0) != 1:
                raise ValueError(f"node {node.id!r} must have exactly one hierarchy parent")
            parent = self._parent[node.id]
            if node.depth != self.nodes[parent].depth + 1:
                raise ValueError(f"node {node.id!r} depth does not increment its parent's")
        # Acyclicity: every parent chain must terminate at ROOT.
        for node in self.nodes.values():
            if node.kind == KIND_DESCRIPTOR:
                continue
            seen = set()
            current: str | None = node.id
            while current is not None and current != ROOT_ID:
                if current in seen:
                    raise ValueError(f"hierarchy cycle through {current!r}")
                seen.add(current)
                current = self._parent.get(current)
            if current is None:
                raise ValueError(f"node {node.id!r} is not connected to ROOT")
        for node in self.nodes.values():
            expected = frozenset(textpipe.extract_keywords(node.label, "en"))
            if node.native_keywords != expected:
                raise ValueError(f"node {node.id!r} native keywords do not match its label")
