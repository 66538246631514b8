import csv
import json

import pytest

from cltseval.clients import HashTokenEmbedder
from cltseval.errors import MissingPair
from cltseval.metrics import bleu, score_outputs, tokenize_for_metrics, write_metric_report
from cltseval.metrics.bleu import sentence_bleu
from cltseval.metrics.sari import sentence_sari
from cltseval.prompting import Strategy, SystemOutput


def make_output(pair, hypothesis, strategy=Strategy.DIRECT, model="m1"):
    return SystemOutput(
        pair_id=pair.id, strategy=strategy, model_id=model,
        hypothesis=hypothesis, intermediate=None,
        prompt_log=[("s", "u", hypothesis)], created_at="t0")


def test_identity_outputs_score_corpus_bleu_100(make_pairs):
    pairs = make_pairs(3)
    outputs = [make_output(p, p.references[0]) for p in pairs]
    records, aggregates = score_outputs(outputs, pairs, HashTokenEmbedder())
    assert len(records) == 3
    [agg] = aggregates
    assert agg.bleu == 100.0
    assert agg.n_items == 3
    assert agg.semantic_f1 == pytest.approx(1.0)


def test_empty_outputs_empty_report(make_pairs):
    records, aggregates = score_outputs([], make_pairs(2), None)
    assert records == [] and aggregates == []


def test_unknown_pair_id(make_pairs):
    pairs = make_pairs(1)
    orphan = make_output(pairs[0], "text")
    orphan.pair_id = "ghost"
    with pytest.raises(MissingPair):
        score_outputs([orphan], pairs, None)


def test_aggregates_mean_sari_but_corpus_bleu(make_pairs):
    pairs = make_pairs(3)
    texts = ["Simple sentence 0.", "Sentence zero.", "Completely different."]
    outputs = [make_output(p, t) for p, t in zip(pairs, texts)]
    records, [agg] = score_outputs(outputs, pairs, None)

    hyps = [tokenize_for_metrics(t, "fr") for t in texts]
    refs = [[tokenize_for_metrics(r, "fr") for r in p.references] for p in pairs]
    assert agg.bleu == pytest.approx(bleu(hyps, refs), abs=1e-9)

    expected_saris = []
    for pair, hyp in zip(pairs, hyps):
        src = tokenize_for_metrics(pair.source, "fr")
        expected_saris.append(sentence_sari(
            src, hyp, [tokenize_for_metrics(r, "fr") for r in pair.references]))
    assert agg.sari == pytest.approx(sum(expected_saris) / 3, abs=1e-9)
    for record, sari_value in zip(records, expected_saris):
        assert record.sari == pytest.approx(sari_value, abs=1e-9)
        assert record.bleu is not None


def test_per_item_bleu_uses_smoothed_sentence_variant(make_pairs):
    pairs = make_pairs(1)
    outputs = [make_output(pairs[0], "Simple sentence 0 extended a lot more.")]
    [record], _ = score_outputs(outputs, pairs, None)
    hyp = tokenize_for_metrics(outputs[0].hypothesis, "fr")
    refs = [tokenize_for_metrics(r, "fr") for r in pairs[0].references]
    assert record.bleu == pytest.approx(sentence_bleu(hyp, refs), abs=1e-9)


def test_translated_source_preferred_for_sari(make_pairs):
    pairs = make_pairs(1)
    pairs[0].provenance = {"translated_source": "Phrase complexe numéro zéro."}
    outputs = [make_output(pairs[0], "Phrase simple.")]
    [record], _ = score_outputs(outputs, pairs, None)
    assert record.sari_source_side == "translated"
    src = tokenize_for_metrics("Phrase complexe numéro zéro.", "fr")
    hyp = tokenize_for_metrics("Phrase simple.", "fr")
    refs = [tokenize_for_metrics(r, "fr") for r in pairs[0].references]
    assert record.sari == pytest.approx(sentence_sari(src, hyp, refs), abs=1e-9)


def test_semantic_null_with_reason_when_no_embedder(make_pairs):
    pairs = make_pairs(1)
    outputs = [make_output(pairs[0], "Anything.")]
    [record], [agg] = score_outputs(outputs, pairs, None)
    assert record.semantic is None
    assert record.reasons["semantic"] == "no_embedder"
    assert agg.semantic_f1 is None


def test_semantic_null_when_hypothesis_has_no_tokens(make_pairs):
    pairs = make_pairs(1)
    outputs = [make_output(pairs[0], "???")]
    outputs[0].hypothesis = " "
    [record], _ = score_outputs(outputs, pairs, HashTokenEmbedder())
    assert record.semantic is None
    assert "semantic" in record.reasons


def test_report_files(tmp_path, make_pairs):
    pairs = make_pairs(2)
    outputs = [make_output(p, p.references[0]) for p in pairs]
    records, aggregates = score_outputs(outputs, pairs, HashTokenEmbedder())
    csv_path = tmp_path / "metrics.csv"
    jsonl_path = tmp_path / "items.jsonl"
    write_metric_report(records, aggregates, csv_path, jsonl_path)

    with csv_path.open() as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["corpus"] == "demo"
    assert rows[0]["n_items"] == "2"
    assert float(rows[0]["bleu"]) == 100.0

    lines = [json.loads(l) for l in jsonl_path.read_text().splitlines()]
    assert len(lines) == 2
    assert lines[0]["pair_id"] == "p0"
