"""XML snapshot of an ontology: byte-stable export, validating import.

Output is deterministic (nodes sorted by id, arcs by kind/from/to, keywords
by origin/text) so two exports of the same snapshot are byte-identical and
the file diffs cleanly under version control.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ontobib import textpipe
from ontobib.ontology.model import (
    ARC_KINDS,
    NODE_KINDS,
    KEYWORD_ORIGINS,
    PROVENANCES,
    ROOT_ID,
    Ontology,
    OntologyNode,
    SemanticArc,
    is_keyword_endpoint,
)

_ORIGIN_NATIVE = "native"
_XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>\n'


class SchemaViolation(ValueError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"snapshot schema violation at {path}: {reason}")
        self.path = path
        self.reason = reason


def export_snapshot(ontology: Ontology) -> str:
    """Serialize an ontology snapshot to its canonical XML text."""
    root = ET.Element("ontology", {"version": str(ontology.version)})
    for node_id in sorted(ontology.nodes):
        node = ontology.nodes[node_id]
        element = ET.SubElement(root, "node", {
            "id": node.id,
            "kind": node.kind,
            "depth": str(node.depth),
        })
        ET.SubElement(element, "label").text = node.label
        for lemma in sorted(node.native_keywords):
            ET.SubElement(element, "keyword", {"origin": _ORIGIN_NATIVE}).text = lemma
        for lemma, origin in sorted(node.added_keywords, key=lambda kw: (kw[1], kw[0])):
            ET.SubElement(element, "keyword", {"origin": origin}).text = lemma
    # Provenance is the final tiebreaker: the same endpoints can be linked
    # by both descriptor co-occurrence and corpus proximity, and set
    # iteration order must never leak into the bytes.
    for arc in sorted(ontology.arcs, key=lambda a: (a.kind, a.source, a.target, a.provenance)):
        ET.SubElement(root, "arc", {
            "from": arc.source,
            "to": arc.target,
            "kind": arc.kind,
            "provenance": arc.provenance,
        })
    ET.indent(root, space="  ")
    return _XML_DECLARATION + ET.tostring(root, encoding="unicode") + "\n"


def _attr(element: ET.Element, name: str, path: str) -> str:
    value = element.get(name)
    if value is None:
        raise SchemaViolation(path, f"missing attribute {name!r}")
    return value


def import_snapshot(document: str) -> Ontology:
    """Parse and validate a snapshot document produced by export_snapshot."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise SchemaViolation("/", f"not well-formed XML: {exc}") from None
    if root.tag != "ontology":
        raise SchemaViolation("/", f"root element is {root.tag!r}, expected 'ontology'")
    try:
        version = int(_attr(root, "version", "/ontology"))
    except ValueError:
        raise SchemaViolation("/ontology", "version is not an integer") from None

    nodes: dict[str, OntologyNode] = {}
    arcs: set[SemanticArc] = set()
    node_index = 0
    arc_index = 0
    for child in root:
        if child.tag == "node":
            node_index += 1
            path = f"/ontology/node[{node_index}]"
            node_id = _attr(child, "id", path)
            kind = _attr(child, "kind", path)
            if kind not in NODE_KINDS:
                raise SchemaViolation(path, f"unknown kind {kind!r}")
            try:
                depth = int(_attr(child, "depth", path))
            except ValueError:
                raise SchemaViolation(path, "depth is not an integer") from None
            if depth < 0:
                raise SchemaViolation(path, "depth is negative")
            label_element = child.find("label")
            if label_element is None or label_element.text is None:
                raise SchemaViolation(path, "missing label")
            label = label_element.text
            native: set[str] = set()
            added: set[tuple[str, str]] = set()
            for keyword in child.findall("keyword"):
                origin = _attr(keyword, "origin", path + "/keyword")
                lemma = keyword.text or ""
                if not lemma:
                    raise SchemaViolation(path + "/keyword", "empty keyword")
                if origin == _ORIGIN_NATIVE:
                    native.add(lemma)
                elif origin in KEYWORD_ORIGINS:
                    added.add((lemma, origin))
                else:
                    raise SchemaViolation(path + "/keyword", f"unknown origin {origin!r}")
            expected_native = set(textpipe.extract_keywords(label, "en"))
            if native != expected_native:
                raise SchemaViolation(path, "native keywords do not recompute from the label")
            if node_id in nodes:
                raise SchemaViolation(path, f"duplicate node id {node_id!r}")
            nodes[node_id] = OntologyNode(
                id=node_id, label=label, kind=kind, depth=depth,
                native_keywords=frozenset(native), added_keywords=frozenset(added),
            )
        elif child.tag == "arc":
            arc_index += 1
            path = f"/ontology/arc[{arc_index}]"
            arc = SemanticArc(
                kind=_attr(child, "kind", path),
                source=_attr(child, "from", path),
                target=_attr(child, "to", path),
                provenance=_attr(child, "provenance", path),
            )
            if arc.kind not in ARC_KINDS:
                raise SchemaViolation(path, f"unknown arc kind {arc.kind!r}")
            if arc.provenance not in PROVENANCES:
                raise SchemaViolation(path, f"unknown provenance {arc.provenance!r}")
            arcs.add(arc)
        else:
            raise SchemaViolation(f"/ontology/{child.tag}", "unexpected element")

    arc_index = 0
    for arc in arcs:
        arc_index += 1
        for endpoint in (arc.source, arc.target):
            if not is_keyword_endpoint(endpoint) and endpoint not in nodes:
                raise SchemaViolation(
                    f"/ontology/arc[@from={arc.source!r}][@to={arc.target!r}]",
                    f"endpoint {endpoint!r} references a missing node",
                )
    if sum(1 for node_id in nodes if node_id == ROOT_ID) != 1:
        raise SchemaViolation("/ontology", "document must contain exactly one ROOT node")

    ontology = Ontology(nodes, frozenset(arcs), version=version)
    try:
        ontology.validate()
    except ValueError as exc:
        raise SchemaViolation("/ontology", str(exc)) from None
    return ontology
