"""Readability formulas over annotated documents.

Reading ease uses the Flesch constants for English and the Kandel-Moles
recalibration for French; the Flesch-Kincaid grade keeps the English
constants for both languages (reported with a footnote downstream). A word
is any token whose form contains at least one letter.
"""

from __future__ import annotations

from ..errors import EmptyDocument
from .hyphenation import HyphenationPatterns, load_patterns, syllable_count

_READING_EASE = {
    "en": (206.835, 1.015, 84.6),
    "fr": (207.0, 1.015, 73.6),
}


def is_word(form: str) -> bool:
    return any(ch.isalpha() for ch in form)


def document_words(doc) -> list[str]:
    return [token.form for token in doc.tokens if is_word(token.form)]


def _asl_asw(doc, patterns: HyphenationPatterns | None) -> tuple[float, float]:
    words = document_words(doc)
    if not words or not doc.sentences:
        raise EmptyDocument(f"document {doc.doc_id!r} has no words")
    if patterns is None:
        patterns = load_patterns(doc.lang)
    syllables = sum(syllable_count(word, doc.lang, patterns) for word in words)
    return len(words) / len(doc.sentences), syllables / len(words)


def flesch_reading_ease(doc, patterns: HyphenationPatterns | None = None) -> float:
    asl, asw = _asl_asw(doc, patterns)
    base, per_sentence, per_syllable = _READING_EASE.get(doc.lang, _READING_EASE["en"])
    return base - per_sentence * asl - per_syllable * asw


def flesch_kincaid_grade(doc, patterns: HyphenationPatterns | None = None) -> float:
    asl, asw = _asl_asw(doc, patterns)
    return 0.39 * asl + 11.8 * asw - 15.59
