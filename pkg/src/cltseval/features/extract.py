"""The linguistic feature suite over annotated documents.

Everything is computed from the annotations alone, so identical CoNLL-U
input always yields an identical vector. Proportion features are counts over
words, tokens, or sentences and stay within [0, 1]; clause-style features
are the share of sentences containing the phenomenon. syllables_ratio is
syllables per word and therefore >= 1 by construction.
"""

from __future__ import annotations

import warnings

from ..errors import EmptyDocument
from .readability import (
    document_words,
    flesch_kincaid_grade,
    flesch_reading_ease,
    is_word,
)
from .hyphenation import syllable_count
from .resources import Resources

CONTENT_UPOS = {"NOUN", "PROPN", "VERB", "ADJ", "ADV"}
NOMINAL_UPOS = {"NOUN", "PROPN"}
CONJUNCTION_UPOS = {"CCONJ", "SCONJ"}
MODIFIER_DEPRELS = {"amod", "advmod", "nmod"}
NEGATION_LEMMAS = {"not", "n't", "ne", "pas", "plus", "jamais"}
CONDITIONAL_LEMMAS = {"if", "si"}

FEATURE_NAMES = (
    # lexical
    "lexical_richness", "infrequent_words_ratio", "long_words_ratio",
    "content_words_ratio", "avg_word_length",
    # syntactic / structural
    "words_before_main_verb", "noun_phrases_ratio", "relative_clauses_ratio",
    "appositions_ratio", "conditional_clauses_ratio", "conjunctions_ratio",
    "passive_voice_ratio", "syntactic_tree_depth", "sentences_number",
    "words_per_sentence", "short_sentences_ratio",
    # readability
    "flesch_reading_ease", "flesch_kincaid_grade", "syllables_ratio",
    # named entities
    "max_same_entity_distance", "unique_entities", "unique_entities_average",
    "avg_same_entity_distance", "entity_to_token_ratio",
    "unique_to_total_entities", "consecutive_entity_distance",
    # grammatical
    "modifiers_ratio", "negations_ratio", "past_perfect_verbs",
    "past_tense_verbs", "punctuation_ratio", "third_person_pronouns_ratio",
)

# the [0, 1] proportions among the above (syllables_ratio is an average)
PROPORTION_FEATURES = (
    "lexical_richness", "infrequent_words_ratio", "long_words_ratio",
    "content_words_ratio", "noun_phrases_ratio", "relative_clauses_ratio",
    "appositions_ratio", "conditional_clauses_ratio", "conjunctions_ratio",
    "passive_voice_ratio", "short_sentences_ratio", "entity_to_token_ratio",
    "unique_to_total_entities", "modifiers_ratio", "negations_ratio",
    "punctuation_ratio", "third_person_pronouns_ratio",
)


def tree_depth(sentence) -> int:
    """Longest root-to-leaf path in edges, plus one."""
    children: dict[int, list[int]] = {}
    root = None
    for token in sentence:
        if token.head == 0:
            root = token.index
        else:
            children.setdefault(token.head, []).append(token.index)
    if root is None:
        raise EmptyDocument("sentence has no root token")
    depth = 0
    stack = [(root, 1)]
    while stack:
        node, level = stack.pop()
        depth = max(depth, level)
        for child in children.get(node, ()):
            stack.append((child, level + 1))
    return depth


def _entity_mentions(doc) -> list[tuple[int, str]]:
    """(global start offset, case-folded surface) per BIO span.

    Offsets are 1-based over the document's flattened token sequence. An I-
    tag without a live span of the same type is promoted to B- with a
    warning; real taggers emit such orphans.
    """
    mentions: list[tuple[int, str]] = []
    offset = 0
    for sentence in doc.sentences:
        span_start = None
        span_type = None
        span_forms: list[str] = []

        def close():
            nonlocal span_start, span_type, span_forms
            if span_start is not None:
                mentions.append((span_start, " ".join(span_forms).casefold()))
            span_start = None
            span_type = None
            span_forms = []

        for token in sentence:
            offset += 1
            label = token.ner
            if label is None or label == "O":
                close()
                continue
            if "-" in label:
                prefix, etype = label.split("-", 1)
            else:
                prefix, etype = label, ""
            if prefix == "I" and span_type == etype and span_start is not None:
                span_forms.append(token.form)
                continue
            if prefix == "I":
                warnings.warn(
                    f"orphan I-{etype} at token {offset} promoted to B-{etype}",
                    stacklevel=2)
            close()
            span_start = offset
            span_type = etype
            span_forms = [token.form]
        close()
    return mentions


def entity_distance_features(doc) -> dict:
    """The seven named-entity features.

    Entity identity is the case-folded surface form. Distances are gaps
    between global start offsets of consecutive mentions; documents with
    fewer than two relevant mentions score 0 so downstream statistics never
    see missing values.
    """
    mentions = _entity_mentions(doc)
    n_tokens = sum(len(s) for s in doc.sentences)
    total = len(mentions)
    identities = [ident for _, ident in mentions]
    unique = len(set(identities))

    same_gaps: list[int] = []
    max_same = 0
    by_identity: dict[str, list[int]] = {}
    for start, ident in mentions:
        by_identity.setdefault(ident, []).append(start)
    for starts in by_identity.values():
        for prev, nxt in zip(starts, starts[1:]):
            gap = nxt - prev
            same_gaps.append(gap)
            max_same = max(max_same, gap)

    any_gaps = [nxt - prev for (prev, _), (nxt, _) in zip(mentions, mentions[1:])]

    per_sentence_unique = []
    offset = 0
    for sentence in doc.sentences:
        lo, hi = offset + 1, offset + len(sentence)
        per_sentence_unique.append(
            len({ident for start, ident in mentions if lo <= start <= hi}))
        offset = hi

    return {
        "max_same_entity_distance": float(max_same),
        "unique_entities": float(unique),
        "unique_entities_average": (
            sum(per_sentence_unique) / len(per_sentence_unique)
            if per_sentence_unique else 0.0),
        "avg_same_entity_distance": (
            sum(same_gaps) / len(same_gaps) if same_gaps else 0.0),
        "entity_to_token_ratio": total / n_tokens if n_tokens else 0.0,
        "unique_to_total_entities": unique / total if total else 0.0,
        "consecutive_entity_distance": (
            sum(any_gaps) / len(any_gaps) if any_gaps else 0.0),
    }


def _is_relative_clause(token, sentence, lang: str) -> bool:
    if token.deprel == "acl:relcl":
        return True
    if lang == "fr" and token.deprel == "acl":
        return any(child.head == token.index and child.upos == "PRON"
                   and child.morph.get("PronType") == "Rel"
                   for child in sentence)
    return False


def _is_past_perfect(token, sentence, lang: str) -> bool:
    if token.morph.get("VerbForm") != "Part" or token.morph.get("Tense") != "Past":
        return False
    for child in sentence:
        if child.head != token.index or not child.deprel.startswith("aux"):
            continue
        if lang == "fr":
            if child.morph.get("Tense") == "Imp":
                return True
        elif child.lemma.lower() == "have" and child.morph.get("Tense") == "Past":
            return True
    return False


def extract_features(doc, resources: Resources) -> dict:
    """All feature values for one document, keyed by FEATURE_NAMES."""
    if not doc.sentences:
        raise EmptyDocument(f"document {doc.doc_id!r} has no sentences")
    words = document_words(doc)
    if not words:
        raise EmptyDocument(f"document {doc.doc_id!r} has no words")
    n_words = len(words)
    n_sentences = len(doc.sentences)
    all_tokens = [token for sentence in doc.sentences for token in sentence]
    n_tokens = len(all_tokens)
    lang = doc.lang

    word_tokens = [t for t in all_tokens if is_word(t.form)]
    folded = [w.casefold() for w in words]
    long_words = sum(
        1 for w in words
        if sum(ch.isalpha() for ch in w) >= resources.long_word_letters)
    syllables = sum(syllable_count(w, lang, resources.patterns) for w in words)

    has_dependent = {t.head for t in all_tokens if t.head != 0}
    noun_phrases = sum(1 for t in all_tokens
                       if t.upos in NOMINAL_UPOS and t.index in has_dependent)

    words_before_root = []
    rel_clause_sents = 0
    appos_sents = 0
    cond_sents = 0
    passive_sents = 0
    short_sents = 0
    depths = []
    past_perfect = 0
    past_tense = 0
    for sentence in doc.sentences:
        root = next(t for t in sentence if t.head == 0)
        words_before_root.append(root.index - 1 if root.upos == "VERB" else 0)
        if any(_is_relative_clause(t, sentence, lang) for t in sentence):
            rel_clause_sents += 1
        if any(t.deprel == "appos" for t in sentence):
            appos_sents += 1
        if any(t.deprel == "mark" and t.lemma.lower() in CONDITIONAL_LEMMAS
               for t in sentence):
            cond_sents += 1
        if any(t.deprel in ("nsubj:pass", "aux:pass") for t in sentence):
            passive_sents += 1
        sent_words = sum(1 for t in sentence if is_word(t.form))
        if sent_words <= resources.short_sentence_words:
            short_sents += 1
        depths.append(tree_depth(sentence))
        past_perfect += sum(1 for t in sentence if _is_past_perfect(t, sentence, lang))
        past_tense += sum(1 for t in sentence if t.morph.get("Tense") == "Past")

    features = {
        "lexical_richness": len(set(folded)) / n_words,
        "infrequent_words_ratio": sum(
            1 for w in words if resources.is_infrequent(w)) / n_words,
        "long_words_ratio": long_words / n_words,
        "content_words_ratio": sum(
            1 for t in word_tokens if t.upos in CONTENT_UPOS) / n_words,
        "avg_word_length": sum(len(w) for w in words) / n_words,
        "words_before_main_verb": sum(words_before_root) / n_sentences,
        "noun_phrases_ratio": noun_phrases / n_words,
        "relative_clauses_ratio": rel_clause_sents / n_sentences,
        "appositions_ratio": appos_sents / n_sentences,
        "conditional_clauses_ratio": cond_sents / n_sentences,
        "conjunctions_ratio": sum(
            1 for t in all_tokens if t.upos in CONJUNCTION_UPOS) / n_words,
        "passive_voice_ratio": passive_sents / n_sentences,
        "syntactic_tree_depth": sum(depths) / n_sentences,
        "sentences_number": float(n_sentences),
        "words_per_sentence": n_words / n_sentences,
        "short_sentences_ratio": short_sents / n_sentences,
        "flesch_reading_ease": flesch_reading_ease(doc, resources.patterns),
        "flesch_kincaid_grade": flesch_kincaid_grade(doc, resources.patterns),
        "syllables_ratio": syllables / n_words,
        "modifiers_ratio": sum(
            1 for t in all_tokens if t.deprel in MODIFIER_DEPRELS) / n_words,
        "negations_ratio": sum(
            1 for t in all_tokens
            if t.morph.get("Polarity") == "Neg"
            or (t.deprel == "advmod" and t.lemma.lower() in NEGATION_LEMMAS)
        ) / n_words,
        "past_perfect_verbs": past_perfect / n_sentences,
        "past_tense_verbs": past_tense / n_sentences,
        "punctuation_ratio": sum(
            1 for t in all_tokens if t.upos == "PUNCT") / n_tokens,
        "third_person_pronouns_ratio": sum(
            1 for t in all_tokens
            if t.upos == "PRON" and t.morph.get("Person") == "3") / n_words,
    }
    features.update(entity_distance_features(doc))
    assert set(features) == set(FEATURE_NAMES)
    return features
