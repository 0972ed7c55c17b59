"""Streaming parser for DBLP-style bibliography XML.

Works in bounded memory: publication elements are parsed one at a time
with a pull parser and the accumulated tree is cleared after every record,
so peak usage depends on the largest record, not on file size. Character
entity references for accented letters (the DBLP convention) are decoded
inline while feeding the parser.
"""

from __future__ import annotations

import io
import re
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import IO, Iterator

from ontobib.corpus.model import ArticleRecord, record_id

_PUBLICATION_TAGS = ("article", "inproceedings")
_CHUNK_SIZE = 64 * 1024

# Accented-letter entities as used in DBLP exports. The five XML built-ins
# are deliberately absent: they must reach the parser untouched.
_ACCENT_ENTITIES = {
    "agrave": "à", "aacute": "á", "acirc": "â", "atilde": "ã", "auml": "ä", "aring": "å",
    "aelig": "æ", "ccedil": "ç",
    "egrave": "è", "eacute": "é", "ecirc": "ê", "euml": "ë",
    "igrave": "ì", "iacute": "í", "icirc": "î", "iuml": "ï",
    "ntilde": "ñ", "ograve": "ò", "oacute": "ó", "ocirc": "ô", "otilde": "õ",
    "ouml": "ö", "oslash": "ø",
    "ugrave": "ù", "uacute": "ú", "ucirc": "û", "uuml": "ü",
    "yacute": "ý", "yuml": "ÿ", "szlig": "ß",
    "Agrave": "À", "Aacute": "Á", "Acirc": "Â", "Atilde": "Ã", "Auml": "Ä", "Aring": "Å",
    "AElig": "Æ", "Ccedil": "Ç",
    "Egrave": "È", "Eacute": "É", "Ecirc": "Ê", "Euml": "Ë",
    "Igrave": "Ì", "Iacute": "Í", "Icirc": "Î", "Iuml": "Ï",
    "Ntilde": "Ñ", "Ograve": "Ò", "Oacute": "Ó", "Ocirc": "Ô", "Otilde": "Õ",
    "Ouml": "Ö", "Oslash": "Ø",
    "Ugrave": "Ù", "Uacute": "Ú", "Ucirc": "Û", "Uuml": "Ü",
}

_ENTITY_RE = re.compile(r"&([A-Za-z][A-Za-z0-9]{1,12});")
_MAX_ENTITY_TAIL = 16


class XmlSyntax(ValueError):
    """Malformed XML aborts the stream; offset is (line, column)."""

    def __init__(self, offset: tuple[int, int], reason: str):
        super().__init__(f"XML syntax error at line {offset[0]}, column {offset[1]}: {reason}")
        self.offset = offset


def _decode_entities(text: str) -> str:
    return _ENTITY_RE.sub(
        lambda m: _ACCENT_ENTITIES.get(m.group(1), m.group(0)), text
    )


def _split_partial_entity(chunk: str) -> tuple[str, str]:
    """Hold back a trailing '&name' with no ';' yet so it is never decoded
    across a chunk boundary."""
    amp = chunk.rfind("&")
    if amp >= 0 and ";" not in chunk[amp:] and len(chunk) - amp <= _MAX_ENTITY_TAIL:
        return chunk[:amp], chunk[amp:]
    return chunk, ""


def _child_text(element: ET.Element, tag: str) -> str:
    child = element.find(tag)
    if child is None:
        return ""
    return re.sub(r"\s+", " ", "".join(child.itertext())).strip()


def _to_record(element: ET.Element) -> ArticleRecord | None:
    title = _child_text(element, "title")
    if not title:
        return None
    year: int | None = None
    raw_year = _child_text(element, "year")
    if raw_year:
        try:
            year = int(raw_year)
        except ValueError:
            year = None
    authors = tuple(
        re.sub(r"\s+", " ", "".join(a.itertext())).strip()
        for a in element.findall("author")
        if "".join(a.itertext()).strip()
    )
    context = _child_text(element, "journal") or _child_text(element, "booktitle")
    uri = _child_text(element, "ee") or None
    key = element.get("key") or record_id(title, year)
    return ArticleRecord(
        id=key, title=title, year=year, context=context, authors=authors, uri=uri,
    )


def parse_dblp_xml(source: str | Path | IO) -> Iterator[ArticleRecord]:
    """Stream article/inproceedings records from a DBLP-style XML document.

    `source` is a path or an open file (text or binary). Records missing a
    title are skipped; a syntax error raises :class:`XmlSyntax` and ends
    the stream.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            yield from _parse_stream(handle)
        return
    if isinstance(source, io.TextIOBase):
        yield from _parse_stream(source)
        return
    yield from _parse_stream(io.TextIOWrapper(source, encoding="utf-8"))


def _parse_stream(handle: IO[str]) -> Iterator[ArticleRecord]:
    parser = ET.XMLPullParser(events=("start", "end"))
    carry = ""
    depth = 0
    root: ET.Element | None = None
    try:
        while True:
            chunk = handle.read(_CHUNK_SIZE)
            if not chunk:
                break
            chunk, carry = _split_partial_entity(carry + chunk)
            parser.feed(_decode_entities(chunk))
            for event, element in parser.read_events():
                if event == "start":
                    depth += 1
                    if root is None:
                        root = element
                    continue
                depth -= 1
                if element.tag in _PUBLICATION_TAGS and depth == 1:
                    record = _to_record(element)
                    if record is not None:
                        yield record
                    if root is not None:
                        root.clear()
        if carry:
            parser.feed(_decode_entities(carry))
        parser.close()
        for event, element in parser.read_events():
            if event == "end" and element.tag in _PUBLICATION_TAGS:
                record = _to_record(element)
                if record is not None:
                    yield record
    except ET.ParseError as exc:
        raise XmlSyntax(exc.position, str(exc)) from None
