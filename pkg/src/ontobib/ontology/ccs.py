"""Parsers for the CCS flat-text taxonomy and the implicit-descriptor list."""

from __future__ import annotations

import re

from ontobib.ontology.model import (
    ARC_HIERARCHY,
    PROV_CCS,
    ROOT_ID,
    ROOT_LABEL,
    ImplicitDescriptor,
    Ontology,
    SemanticArc,
    make_node,
    parent_code,
)

# Operator files may only carry genuine taxonomy codes: a single capital
# letter with dotted numeric (or lowercase, e.g. "A.m") segments. Synthetic
# "X<n>" branches are system-allocated and never parsed from a file.
_CCS_CODE_RE = re.compile(r"^[A-K](?:\.(?:\d+|[a-z]))*$")


class MalformedLine(ValueError):
    def __init__(self, line_no: int, reason: str = ""):
        detail = f": {reason}" if reason else ""
        super().__init__(f"malformed line {line_no}{detail}")
        self.line_no = line_no


class OrphanCode(ValueError):
    def __init__(self, code: str):
        super().__init__(f"code {code!r} has no parent node in the document")
        self.code = code


def load_ccs(source: str) -> Ontology:
    """Parse a CCS flat-text document into an ontology snapshot.

    One node per line, ``<code> <label>``; a bare-letter code is top level.
    A synthetic ROOT (labelled "computer science") is inserted above the
    letter categories so their codes stay verbatim. Trailing dots on codes
    (as printed in some taxonomy dumps) are tolerated.
    """
    entries: dict[str, tuple[int, str]] = {}
    saw_content = False
    for line_no, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        saw_content = True
        parts = line.split(None, 1)
        code = parts[0].rstrip(".")
        label = parts[1].strip() if len(parts) > 1 else ""
        if not _CCS_CODE_RE.match(code):
            raise MalformedLine(line_no, f"unparsable code {parts[0]!r}")
        if not label:
            raise MalformedLine(line_no, f"code {code!r} has no label")
        entries[code] = (line_no, label)
    if not saw_content:
        raise MalformedLine(1, "document is empty")

    nodes = {ROOT_ID: make_node(ROOT_ID, ROOT_LABEL, depth=0)}
    arcs: set[SemanticArc] = set()
    for code in entries:
        parent = parent_code(code)
        if parent != ROOT_ID and parent not in entries:
            raise OrphanCode(code)
    for code, (_, label) in entries.items():
        depth = code.count(".") + 1
        nodes[code] = make_node(code, label, depth=depth)
        arcs.add(SemanticArc(ARC_HIERARCHY, parent_code(code), code, PROV_CCS))
    return Ontology(nodes, frozenset(arcs), version=1)


def load_descriptors(source: str) -> list[ImplicitDescriptor]:
    """Parse a descriptor flat-text document: ``<term> | <code>[,<code>...]``.

    Repeated terms merge into a single descriptor carrying all codes, in
    first-seen order.
    """
    order: list[str] = []
    codes_by_term: dict[str, list[str]] = {}
    for line_no, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if "|" not in line:
            raise MalformedLine(line_no, "missing '|' separator")
        term_part, _, codes_part = line.rpartition("|")
        term = term_part.strip()
        if not term:
            raise MalformedLine(line_no, "empty descriptor term")
        codes = [c.strip() for c in codes_part.split(",")]
        if not codes or any(not c for c in codes):
            raise MalformedLine(line_no, "empty category code")
        for code in codes:
            if not _CCS_CODE_RE.match(code):
                raise MalformedLine(line_no, f"unparsable category code {code!r}")
        if term not in codes_by_term:
            order.append(term)
            codes_by_term[term] = []
        for code in codes:
            if code not in codes_by_term[term]:
                codes_by_term[term].append(code)
    return [ImplicitDescriptor(term, tuple(codes_by_term[term])) for term in order]
