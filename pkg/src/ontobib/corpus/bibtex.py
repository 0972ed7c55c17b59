"""Hand-rolled parser for the BibTeX subset used by bibliography dumps.

Supported: ``@article``, ``@inproceedings`` and ``@book`` entries with
brace- or quote-delimited values, one level of brace nesting, and
backslash-escaped literal braces. Anything else is skipped and reported,
never silently dropped.
"""

from __future__ import annotations

import re

from ontobib.corpus.model import ArticleRecord

_HANDLED_TYPES = ("article", "inproceedings", "book")
_WHITESPACE_RE = re.compile(r"\s+")


class UnbalancedBraces(ValueError):
    def __init__(self, entry_key: str):
        super().__init__(f"unbalanced braces in entry {entry_key!r}")
        self.entry_key = entry_key


class MissingTitle(ValueError):
    def __init__(self, entry_key: str):
        super().__init__(f"entry {entry_key!r} has no title")
        self.entry_key = entry_key


def _clean_value(raw: str) -> str:
    unescaped = raw.replace(r"\{", "{").replace(r"\}", "}")
    return _WHITESPACE_RE.sub(" ", unescaped).strip()


def _scan_braced(text: str, start: int, entry_key: str) -> tuple[str, int]:
    """Value between braces starting at `start`; returns (raw, index past)."""
    assert text[start] == "{"
    depth = 0
    i = start
    out: list[str] = []
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text) and text[i + 1] in "{}":
            out.append(text[i:i + 2])
            i += 2
            continue
        if ch == "{":
            depth += 1
            if depth > 1:
                out.append(ch)
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return "".join(out), i + 1
            out.append(ch)
        else:
            out.append(ch)
        i += 1
    raise UnbalancedBraces(entry_key)


def _scan_quoted(text: str, start: int, entry_key: str) -> tuple[str, int]:
    assert text[start] == '"'
    i = start + 1
    out: list[str] = []
    while i < len(text):
        ch = text[i]
        if ch == '"':
            return "".join(out), i + 1
        out.append(ch)
        i += 1
    raise UnbalancedBraces(entry_key)


def _parse_fields(body: str, entry_key: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    i = 0
    while i < len(body):
        while i < len(body) and (body[i].isspace() or body[i] == ","):
            i += 1
        if i >= len(body):
            break
        eq = body.find("=", i)
        if eq < 0:
            break
        name = body[i:eq].strip().lower()
        i = eq + 1
        while i < len(body) and body[i].isspace():
            i += 1
        if i >= len(body):
            raise UnbalancedBraces(entry_key)
        if body[i] == "{":
            raw, i = _scan_braced(body, i, entry_key)
        elif body[i] == '"':
            raw, i = _scan_quoted(body, i, entry_key)
        else:
            end = i
            while end < len(body) and body[end] not in ",":
                end += 1
            raw, i = body[i:end], end
        if name:
            fields[name] = _clean_value(raw)
    return fields


def _to_record(entry_type: str, key: str, fields: dict[str, str]) -> ArticleRecord:
    title = fields.get("title", "")
    if not title:
        raise MissingTitle(key)
    year: int | None = None
    raw_year = fields.get("year", "")
    if raw_year:
        try:
            year = int(raw_year)
        except ValueError:
            year = None
    authors = tuple(
        a.strip() for a in fields.get("author", "").split(" and ") if a.strip()
    )
    context = fields.get("journal") or fields.get("booktitle") or ""
    return ArticleRecord(
        id=key,
        title=title,
        year=year,
        context=context,
        authors=authors,
        uri=fields.get("url") or None,
    )


def parse_bibtex(text: str) -> tuple[list[ArticleRecord], list[str]]:
    """Parse every entry in a BibTeX document.

    Returns (records, warnings). Unknown entry types and entries without a
    title are skipped with a warning; an entry whose braces never balance
    aborts the parse with :class:`UnbalancedBraces`.
    """
    records: list[ArticleRecord] = []
    warnings: list[str] = []
    i = 0
    while True:
        at = text.find("@", i)
        if at < 0:
            break
        brace = text.find("{", at)
        if brace < 0:
            break
        entry_type = text[at + 1:brace].strip().lower()
        probe_key = text[brace + 1:brace + 64].split(",", 1)[0].split("}", 1)[0].strip()
        body, i = _scan_braced(text, brace, probe_key or entry_type)
        key, _, field_part = body.partition(",")
        key = key.strip()
        if entry_type not in _HANDLED_TYPES:
            warnings.append(f"skipped @{entry_type} entry {key!r}: unhandled type")
            continue
        fields = _parse_fields(field_part, key)
        try:
            records.append(_to_record(entry_type, key, fields))
        except MissingTitle:
            warnings.append(f"skipped @{entry_type} entry {key!r}: missing title")
    return records, warnings
