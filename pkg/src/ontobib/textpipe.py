"""Tokenization, stop-word filtering and lemmatization for English and French.

This is the keyword factory for the whole portal: topic labels, article
titles and user queries all pass through the same pipeline, so lemmas
computed at different times always compare equal. The stop lists and the
lemma exception tables are versioned data files shipped with the package;
the suffix rules below are deliberately small and deterministic (no
external models).
"""

from __future__ import annotations

import itertools
import re
import unicodedata
from collections import Counter
from importlib import resources

LANGUAGES = ("en", "fr")


class UnknownLanguage(ValueError):
    """Raised for languages outside the shipped set (en, fr)."""

    def __init__(self, language: str):
        super().__init__(f"unknown language: {language!r} (expected one of {LANGUAGES})")
        self.language = language


# Tokens are runs of letters/digits; '+' and '#' are kept when they trail a
# token so descriptor-style terms like "c++" and "c#" survive intact.
_TOKEN_RE = re.compile(r"[^\W_]+(?:[+#]+)?", re.UNICODE)

_MAX_LEMMA_PASSES = 10


def _read_data(name: str) -> str:
    return resources.files("ontobib.data").joinpath(name).read_text(encoding="utf-8")


def _parse_wordlist(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line)
    return frozenset(words)


def _parse_exceptions(text: str) -> dict[str, str]:
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        surface, _, lemma = line.partition("\t")
        table[surface.strip()] = lemma.strip()
    return table


_STOPWORDS: dict[str, frozenset[str]] = {
    "en": _parse_wordlist(_read_data("stopwords_en.txt")),
    "fr": _parse_wordlist(_read_data("stopwords_fr.txt")),
}

_EXCEPTIONS: dict[str, dict[str, str]] = {
    "en": _parse_exceptions(_read_data("lemma_exceptions_en.txt")),
    "fr": _parse_exceptions(_read_data("lemma_exceptions_fr.txt")),
}


def _check_language(language: str) -> str:
    if language not in LANGUAGES:
        raise UnknownLanguage(language)
    return language


def stopwords(language: str) -> frozenset[str]:
    """The shipped stop list for a language."""
    return _STOPWORDS[_check_language(language)]


def fold_diacritics(text: str) -> str:
    """Strip combining marks so accented and plain spellings compare equal."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def tokenize(text: str) -> list[str]:
    """Split text into lowercase tokens.

    Splits on whitespace, "/", "-" and punctuation; "+" and "#" are kept
    when trailing a token ("C++ rocks" -> ["c++", "rocks"]). Empty tokens
    never appear; order is preserved.
    """
    return _TOKEN_RE.findall(text.lower())


def filter_stopwords(tokens: list[str], language: str) -> list[str]:
    """Drop stop words, preserving the order of the remaining tokens."""
    stops = stopwords(language)
    return [tok for tok in tokens if tok not in stops]


def _step_en(token: str) -> str:
    exc = _EXCEPTIONS["en"]
    if token in exc:
        return exc[token]
    if token.endswith("ies") and len(token) >= 5:
        return token[:-3] + "y"
    if token.endswith("ss"):
        return token
    if token.endswith("s") and len(token) >= 4:
        return token[:-1]
    if token.endswith("ing") and len(token) >= 7:
        stem = token[:-3]
        if stem[-1] == stem[-2] and stem[-1] not in "lsz":
            stem = stem[:-1]
        return stem
    return token


def _step_fr(token: str) -> str:
    exc = _EXCEPTIONS["fr"]
    if token in exc:
        return exc[token]
    if token.endswith("aux") and len(token) >= 5:
        return token[:-3] + "al"
    if token.endswith("ss"):
        return token
    if token.endswith("s") and len(token) >= 4:
        return token[:-1]
    return token


def lemmatize(token: str, language: str = "en") -> str:
    """Reduce a token to its lemma: lowercase, diacritic-folded, suffix-stripped.

    The exception table is consulted before the suffix rules, and the rules
    are iterated to a fixed point, so lemmatize(lemmatize(t)) == lemmatize(t)
    for every input.
    """
    _check_language(language)
    step = _step_en if language == "en" else _step_fr
    # Fold before lowering: compatibility characters can decompose into
    # uppercase letters, and lowering can introduce fresh combining marks.
    lemma = fold_diacritics(fold_diacritics(token).lower())
    for _ in range(_MAX_LEMMA_PASSES):
        reduced = step(lemma)
        if reduced == lemma:
            break
        lemma = reduced
    return lemma


def extract_keywords(text: str, language: str = "en") -> set[str]:
    """Lemma set of a label, title or query: tokenize, de-noise, lemmatize.

    Stop words are filtered both before and after lemmatization, so the
    result never contains a stop word even when a suffix rule collapses a
    token onto one.
    """
    stops = stopwords(language)
    lemmas = set()
    for token in filter_stopwords(tokenize(text), language):
        lemma = lemmatize(token, language)
        if lemma and lemma not in stops:
            lemmas.add(lemma)
    return lemmas


def cooccurrence_stats(documents: list[set[str]]) -> dict[tuple[str, str], int]:
    """Count, per unordered lemma pair, the documents containing both.

    Pairs are keyed in sorted order; pairs that never co-occur are absent.
    """
    counts: Counter[tuple[str, str]] = Counter()
    for doc in documents:
        for pair in itertools.combinations(sorted(set(doc)), 2):
            counts[pair] += 1
    return dict(counts)
