"""CCS-derived domain ontology: model, parsers, enrichment, snapshots."""

from ontobib.ontology.ccs import MalformedLine, OrphanCode, load_ccs, load_descriptors
from ontobib.ontology.model import (
    ARC_DESCRIPTOR,
    ARC_HIERARCHY,
    ARC_RELATED,
    KIND_DESCRIPTOR,
    KIND_GENERAL,
    KIND_MISCELLANEOUS,
    KIND_REGULAR,
    ORIGIN_FOLKSONOMY,
    ORIGIN_SYSTEM,
    PROV_CCS,
    PROV_COOCCURRENCE,
    PROV_CORPUS,
    PROV_FOLKSONOMY,
    ROOT_ID,
    ROOT_LABEL,
    ImplicitDescriptor,
    Ontology,
    OntologyNode,
    SemanticArc,
    UnknownNode,
    is_keyword_endpoint,
    keyword_endpoint,
    kind_for_label,
    make_node,
    parent_code,
    related_arc,
)
from ontobib.ontology.ops import (
    FocusView,
    UnknownCode,
    add_child_node,
    add_keyword,
    add_proximity_arcs,
    attach_descriptors,
    ensure_general_bucket,
    focus_context,
    general_bucket,
    keyword_cluster,
    next_synthetic_code,
    proximity,
)
from ontobib.ontology.snapshot import SchemaViolation, export_snapshot, import_snapshot

__all__ = [
    "ARC_DESCRIPTOR", "ARC_HIERARCHY", "ARC_RELATED",
    "KIND_DESCRIPTOR", "KIND_GENERAL", "KIND_MISCELLANEOUS", "KIND_REGULAR",
    "ORIGIN_FOLKSONOMY", "ORIGIN_SYSTEM",
    "PROV_CCS", "PROV_COOCCURRENCE", "PROV_CORPUS", "PROV_FOLKSONOMY",
    "ROOT_ID", "ROOT_LABEL",
    "FocusView", "ImplicitDescriptor", "MalformedLine", "Ontology", "OntologyNode",
    "OrphanCode", "SchemaViolation", "SemanticArc", "UnknownCode", "UnknownNode",
    "add_child_node", "add_keyword", "add_proximity_arcs", "attach_descriptors",
    "ensure_general_bucket", "export_snapshot", "focus_context", "general_bucket",
    "import_snapshot", "is_keyword_endpoint", "keyword_cluster", "keyword_endpoint",
    "kind_for_label", "load_ccs", "load_descriptors", "make_node",
    "next_synthetic_code", "parent_code", "proximity", "related_arc",
]
