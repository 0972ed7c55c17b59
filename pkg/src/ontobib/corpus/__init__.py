"""Pseudo-corpus ingestion, classification and storage."""

from ontobib.corpus.bibtex import MissingTitle, UnbalancedBraces, parse_bibtex
from ontobib.corpus.classify import classify, reclassify_orphans
from ontobib.corpus.dblp import XmlSyntax, parse_dblp_xml
from ontobib.corpus.model import (
    STATUS_PERMANENT,
    STATUS_PROVISIONAL,
    ArticleRecord,
    PseudoCorpus,
    SnapshotCache,
    build_lemma_index,
    build_snapshot,
    incremental_update,
    load_snapshot,
    record_id,
    replace_records,
    search_internal,
)

__all__ = [
    "ArticleRecord", "MissingTitle", "PseudoCorpus", "STATUS_PERMANENT",
    "STATUS_PROVISIONAL", "SnapshotCache", "UnbalancedBraces", "XmlSyntax",
    "build_lemma_index", "build_snapshot", "classify", "incremental_update",
    "load_snapshot", "parse_bibtex", "parse_dblp_xml", "reclassify_orphans",
    "record_id", "replace_records", "search_internal",
]
