import pytest

from cltseval.errors import EmptyDocument, MissingResource
from cltseval.features import (
    AnnotatedDocument,
    AnnotatedToken,
    FEATURE_NAMES,
    PROPORTION_FEATURES,
    entity_distance_features,
    extract_features,
    load_resources,
    tree_depth,
)

EN = load_resources("en")
FR = load_resources("fr")


def tok(index, form, head, deprel, upos="NOUN", lemma=None, morph=None, ner=None):
    return AnnotatedToken(index=index, form=form, lemma=lemma or form.lower(),
                          upos=upos, head=head, deprel=deprel,
                          morph=morph or {}, ner=ner)


def doc_of(sentences, lang="en"):
    return AnnotatedDocument(doc_id="d", lang=lang, sentences=sentences)


class TestTreeDepth:
    def test_single_token(self):
        assert tree_depth([tok(1, "hi", 0, "root")]) == 1

    def test_chain(self):
        sentence = [tok(1, "a", 0, "root"), tok(2, "b", 1, "dep"),
                    tok(3, "c", 2, "dep")]
        assert tree_depth(sentence) == 3

    def test_hand_built_eight_token_tree(self):
        # hand DFS: longest path 1 -> 2 -> 4 -> 5 -> 6/7, five nodes deep
        heads = [0, 1, 1, 2, 4, 5, 5, 3]
        sentence = [tok(i + 1, f"w{i}", h, "root" if h == 0 else "dep")
                    for i, h in enumerate(heads)]
        assert tree_depth(sentence) == 5

    def test_depth_bounded_by_length_and_chain_extremes(self):
        for n in (1, 2, 5, 9):
            chain = [tok(i + 1, "w", i, "root" if i == 0 else "dep")
                     for i in range(n)]
            assert tree_depth(chain) == n
            star = [tok(1, "w", 0, "root")] + [
                tok(i + 2, "w", 1, "dep") for i in range(n - 1)]
            assert tree_depth(star) == (2 if n > 1 else 1)


class TestEntityFeatures:
    def test_zero_entities(self):
        doc = doc_of([[tok(1, "nothing", 0, "root")]])
        features = entity_distance_features(doc)
        assert all(value == 0.0 for value in features.values())

    def test_repeated_entity_distance_hand_count(self):
        # same entity at token starts 1 and 6: gap 5
        sentence = [
            tok(1, "Paris", 0, "root", upos="PROPN", ner="B-LOC"),
            tok(2, "is", 1, "cop"), tok(3, "far", 1, "dep"),
            tok(4, "from", 1, "dep"), tok(5, "old", 6, "amod"),
            tok(6, "Paris", 1, "dep", upos="PROPN", ner="B-LOC"),
            tok(7, ".", 1, "punct", upos="PUNCT"),
        ]
        features = entity_distance_features(doc_of([sentence]))
        assert features["max_same_entity_distance"] == 5.0
        assert features["avg_same_entity_distance"] == 5.0
        assert features["consecutive_entity_distance"] == 5.0
        assert features["unique_entities"] == 1.0
        assert features["unique_to_total_entities"] == 0.5
        assert features["entity_to_token_ratio"] == pytest.approx(2 / 7)
        assert features["unique_entities_average"] == 1.0

    def test_two_distinct_single_mentions(self):
        sentence = [
            tok(1, "Alice", 0, "root", upos="PROPN", ner="B-PER"),
            tok(2, "met", 1, "dep", upos="VERB"),
            tok(3, "Bob", 2, "obj", upos="PROPN", ner="B-PER"),
        ]
        features = entity_distance_features(doc_of([sentence]))
        assert features["unique_to_total_entities"] == 1.0
        assert features["max_same_entity_distance"] == 0.0
        assert features["consecutive_entity_distance"] == 2.0

    def test_multi_token_span_and_cross_sentence_identity(self):
        s1 = [tok(1, "New", 2, "amod", ner="B-LOC"),
              tok(2, "York", 0, "root", upos="PROPN", ner="I-LOC")]
        s2 = [tok(1, "new", 2, "amod", ner="B-LOC"),
              tok(2, "york", 0, "root", upos="PROPN", ner="I-LOC")]
        features = entity_distance_features(doc_of([s1, s2]))
        # case-folded identity: one entity mentioned at offsets 1 and 3
        assert features["unique_entities"] == 1.0
        assert features["max_same_entity_distance"] == 2.0

    def test_orphan_inside_tag_promoted_with_warning(self):
        sentence = [tok(1, "plain", 0, "root"),
                    tok(2, "Bob", 1, "dep", upos="PROPN", ner="I-PER")]
        with pytest.warns(UserWarning):
            features = entity_distance_features(doc_of([sentence]))
        assert features["unique_entities"] == 1.0
        assert features["entity_to_token_ratio"] == 0.5


def one_word_document():
    return doc_of([[tok(1, "the", 0, "root", upos="DET")]])


class TestExtractFeatures:
    def test_one_word_document_values(self):
        features = extract_features(one_word_document(), EN)
        assert features["sentences_number"] == 1.0
        assert features["words_per_sentence"] == 1.0
        assert features["lexical_richness"] == 1.0
        assert features["avg_word_length"] == 3.0
        assert features["syllables_ratio"] == 1.0
        assert features["short_sentences_ratio"] == 1.0
        assert features["syntactic_tree_depth"] == 1.0
        assert features["flesch_reading_ease"] == pytest.approx(121.22, abs=1e-9)
        assert features["flesch_kincaid_grade"] == pytest.approx(-3.4, abs=1e-9)
        for name in ("infrequent_words_ratio", "long_words_ratio",
                     "content_words_ratio", "words_before_main_verb",
                     "noun_phrases_ratio", "relative_clauses_ratio",
                     "appositions_ratio", "conditional_clauses_ratio",
                     "conjunctions_ratio", "passive_voice_ratio",
                     "max_same_entity_distance", "unique_entities",
                     "unique_entities_average", "avg_same_entity_distance",
                     "entity_to_token_ratio", "unique_to_total_entities",
                     "consecutive_entity_distance", "modifiers_ratio",
                     "negations_ratio", "past_perfect_verbs",
                     "past_tense_verbs", "punctuation_ratio",
                     "third_person_pronouns_ratio"):
            assert features[name] == 0.0, name

    def test_totality_every_field_set(self):
        features = extract_features(one_word_document(), EN)
        assert set(features) == set(FEATURE_NAMES)
        assert all(isinstance(v, float) for v in features.values())

    def test_passive_and_relative_clause_fixture(self):
        passive = [
            tok(1, "The", 2, "det", upos="DET"),
            tok(2, "law", 4, "nsubj:pass"),
            tok(3, "was", 4, "aux:pass", upos="AUX", lemma="be",
                morph={"Tense": "Past"}),
            tok(4, "passed", 0, "root", upos="VERB",
                morph={"Tense": "Past", "VerbForm": "Part"}),
        ]
        relative = [
            tok(1, "The", 2, "det", upos="DET"),
            tok(2, "man", 5, "nsubj"),
            tok(3, "who", 4, "nsubj", upos="PRON", morph={"PronType": "Rel"}),
            tok(4, "runs", 2, "acl:relcl", upos="VERB"),
            tok(5, "wins", 0, "root", upos="VERB"),
        ]
        features = extract_features(doc_of([passive, relative]), EN)
        assert features["passive_voice_ratio"] == 0.5
        assert features["relative_clauses_ratio"] == 0.5
        # "was" and "passed" both carry Tense=Past; two hits over two sentences
        assert features["past_tense_verbs"] == 1.0

    def test_french_relative_clause_via_acl_plus_rel_pronoun(self):
        sentence = [
            tok(1, "homme", 0, "root"),
            tok(2, "qui", 3, "nsubj", upos="PRON", morph={"PronType": "Rel"}),
            tok(3, "court", 1, "acl", upos="VERB"),
        ]
        features = extract_features(doc_of([sentence], lang="fr"), FR)
        assert features["relative_clauses_ratio"] == 1.0

    def test_past_perfect_english(self):
        had_walked = [
            tok(1, "She", 3, "nsubj", upos="PRON",
                morph={"Person": "3", "PronType": "Prs"}),
            tok(2, "had", 3, "aux", upos="AUX", lemma="have",
                morph={"Tense": "Past"}),
            tok(3, "walked", 0, "root", upos="VERB",
                morph={"Tense": "Past", "VerbForm": "Part"}),
        ]
        has_walked = [
            tok(1, "She", 3, "nsubj", upos="PRON", morph={"Person": "3"}),
            tok(2, "has", 3, "aux", upos="AUX", lemma="have",
                morph={"Tense": "Pres"}),
            tok(3, "walked", 0, "root", upos="VERB",
                morph={"Tense": "Past", "VerbForm": "Part"}),
        ]
        features = extract_features(doc_of([had_walked, has_walked]), EN)
        assert features["past_perfect_verbs"] == 0.5  # present perfect excluded
        assert features["third_person_pronouns_ratio"] == pytest.approx(2 / 6)

    def test_past_perfect_french_plus_que_parfait(self):
        sentence = [
            tok(1, "il", 3, "nsubj", upos="PRON", morph={"Person": "3"}),
            tok(2, "avait", 3, "aux", upos="AUX", lemma="avoir",
                morph={"Tense": "Imp"}),
            tok(3, "marché", 0, "root", upos="VERB",
                morph={"Tense": "Past", "VerbForm": "Part"}),
        ]
        features = extract_features(doc_of([sentence], lang="fr"), FR)
        assert features["past_perfect_verbs"] == 1.0

    def test_conditional_conjunction_negation_modifier(self):
        sentence = [
            tok(1, "If", 4, "mark", upos="SCONJ", lemma="if"),
            tok(2, "he", 4, "nsubj", upos="PRON", morph={"Person": "3"}),
            tok(3, "not", 4, "advmod", upos="PART", lemma="not"),
            tok(4, "runs", 0, "root", upos="VERB"),
            tok(5, "fast", 4, "advmod", upos="ADV"),
        ]
        features = extract_features(doc_of([sentence]), EN)
        assert features["conditional_clauses_ratio"] == 1.0
        assert features["conjunctions_ratio"] == pytest.approx(1 / 5)
        assert features["negations_ratio"] == pytest.approx(1 / 5)
        assert features["modifiers_ratio"] == pytest.approx(2 / 5)
        assert features["words_before_main_verb"] == 3.0
        assert features["content_words_ratio"] == pytest.approx(2 / 5)

    def test_words_before_main_verb_zero_when_root_not_verb(self):
        sentence = [tok(1, "nice", 2, "amod", upos="ADJ"),
                    tok(2, "day", 0, "root")]
        features = extract_features(doc_of([sentence]), EN)
        assert features["words_before_main_verb"] == 0.0

    def test_noun_phrases_are_nominal_heads_with_dependents(self):
        sentence = [
            tok(1, "big", 2, "amod", upos="ADJ"),
            tok(2, "dogs", 3, "nsubj"),
            tok(3, "bark", 0, "root", upos="VERB"),
            tok(4, "loudly", 3, "advmod", upos="ADV"),
        ]
        features = extract_features(doc_of([sentence]), EN)
        assert features["noun_phrases_ratio"] == pytest.approx(1 / 4)

    def test_infrequent_and_long_words(self):
        sentence = [
            tok(1, "the", 2, "det", upos="DET"),
            tok(2, "absquatulation", 0, "root"),
        ]
        features = extract_features(doc_of([sentence]), EN)
        assert features["infrequent_words_ratio"] == 0.5
        assert features["long_words_ratio"] == 0.5
        assert features["avg_word_length"] == pytest.approx((3 + 14) / 2)

    def test_simplified_text_reads_easier(self):
        complex_doc = doc_of([[
            tok(1, "notwithstanding", 2, "advmod", upos="ADV"),
            tok(2, "considerations", 0, "root"),
            tok(3, "of", 4, "case", upos="ADP"),
            tok(4, "extraordinary", 2, "nmod", upos="ADJ"),
            tok(5, "complexity", 4, "nmod"),
        ]])
        simple_doc = doc_of([
            [tok(1, "this", 2, "nsubj", upos="PRON"),
             tok(2, "works", 0, "root", upos="VERB")],
            [tok(1, "all", 2, "nsubj", upos="PRON"),
             tok(2, "good", 0, "root", upos="ADJ")],
        ])
        complex_features = extract_features(complex_doc, EN)
        simple_features = extract_features(simple_doc, EN)
        assert simple_features["flesch_reading_ease"] > \
            complex_features["flesch_reading_ease"]

    def test_punctuation_ratio_over_tokens_not_words(self):
        sentence = [tok(1, "hi", 0, "root"),
                    tok(2, ".", 1, "punct", upos="PUNCT")]
        features = extract_features(doc_of([sentence]), EN)
        assert features["punctuation_ratio"] == 0.5

    def test_proportions_stay_in_unit_interval(self):
        docs = [
            one_word_document(),
            doc_of([[tok(1, "If", 3, "mark", upos="SCONJ", lemma="if"),
                     tok(2, "they", 3, "nsubj", upos="PRON",
                         morph={"Person": "3"}),
                     tok(3, "ran", 0, "root", upos="VERB",
                         morph={"Tense": "Past"}),
                     tok(4, ",", 3, "punct", upos="PUNCT"),
                     tok(5, "Paris", 3, "obl", upos="PROPN", ner="B-LOC"),
                     tok(6, "won", 3, "conj", upos="VERB",
                         morph={"Tense": "Past"})]]),
        ]
        for doc in docs:
            features = extract_features(doc, EN)
            for name in PROPORTION_FEATURES:
                assert 0.0 <= features[name] <= 1.0, name

    def test_empty_document_raises(self):
        with pytest.raises(EmptyDocument):
            extract_features(doc_of([]), EN)

    def test_determinism(self):
        doc = one_word_document()
        assert extract_features(doc, EN) == extract_features(doc, EN)


def test_missing_resources():
    with pytest.raises(MissingResource):
        load_resources("de")
    with pytest.raises(MissingResource):
        load_resources("en", frequency_path="/nonexistent.tsv")


def test_threshold_overrides():
    resources = load_resources("en", top_k=1)
    assert resources.is_infrequent("of")       # rank 2, beyond top_k=1
    assert not resources.is_infrequent("the")  # rank 1
