"""Per-item metric records and corpus-level aggregates.

SARI's source side uses the translated source recorded during preprocessing
(same language as the hypothesis); pairs without one fall back to the raw
source, and the choice is flagged on the record. Aggregate BLEU uses the
corpus-level formula over the group, not the mean of sentence scores; SARI
and semantic F1 aggregate as means.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

from ..errors import (
    CltsEvalError,
    DegenerateVector,
    DimensionMismatch,
    EmptySequence,
    MissingPair,
)
from .bleu import bleu, sentence_bleu
from .sari import sentence_sari
from .semantic import semantic_similarity
from .tokenizer import tokenize_for_metrics


@dataclass
class MetricRecord:
    pair_id: str
    strategy: str
    model_id: str
    corpus_id: str
    bleu: float | None
    sari: float | None
    semantic: float | None
    reasons: dict = field(default_factory=dict)
    sari_source_side: str = "translated"

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class AggregateRecord:
    corpus_id: str
    model_id: str
    strategy: str
    n_items: int
    bleu: float | None
    sari: float | None
    semantic_f1: float | None


def _sari_source(pair) -> tuple[str, str]:
    translated = pair.provenance.get("translated_source")
    if translated:
        return translated, "translated"
    return pair.source, "raw_source"


def _mean(values: list[float]) -> float | None:
    return sum(values) / len(values) if values else None


def score_outputs(outputs, pairs, token_embedder=None):
    """Score system outputs against their pairs.

    Returns (records, aggregates): one MetricRecord per output and one
    AggregateRecord per (corpus, model, strategy), sorted by group key.
    Semantic scores need a token embedder; without one they are null with
    reason "no_embedder".
    """
    pair_map = {pair.id: pair for pair in pairs}
    records: list[MetricRecord] = []
    groups: dict[tuple, dict] = {}
    for output in outputs:
        pair = pair_map.get(output.pair_id)
        if pair is None:
            raise MissingPair(f"output references unknown pair {output.pair_id!r}")
        lang = pair.target_lang
        hyp_tokens = tokenize_for_metrics(output.hypothesis, lang)
        ref_tokens = [tokenize_for_metrics(ref, lang) for ref in pair.references]
        src_text, src_side = _sari_source(pair)
        src_tokens = tokenize_for_metrics(src_text, lang)

        reasons: dict = {}
        bleu_score = sentence_bleu(hyp_tokens, ref_tokens)
        sari_score = sentence_sari(src_tokens, hyp_tokens, ref_tokens)
        semantic_score = None
        if token_embedder is None:
            reasons["semantic"] = "no_embedder"
        else:
            try:
                embedded = token_embedder.embed_tokens(
                    [output.hypothesis] + list(pair.references), lang)
                _, hyp_vectors = embedded[0]
                best = None
                for _, ref_vectors in embedded[1:]:
                    _, _, f1 = semantic_similarity(hyp_vectors, ref_vectors)
                    if best is None or f1 > best:
                        best = f1
                semantic_score = best
            except (EmptySequence, DimensionMismatch, DegenerateVector,
                    CltsEvalError) as exc:
                reasons["semantic"] = f"{type(exc).__name__}: {exc}"

        strategy = getattr(output.strategy, "value", output.strategy)
        records.append(MetricRecord(
            pair_id=output.pair_id,
            strategy=strategy,
            model_id=output.model_id,
            corpus_id=pair.corpus_id,
            bleu=bleu_score,
            sari=sari_score,
            semantic=semantic_score,
            reasons=reasons,
            sari_source_side=src_side,
        ))
        group = groups.setdefault((pair.corpus_id, output.model_id, strategy), {
            "hyps": [], "refs": [], "saris": [], "semantics": [],
        })
        group["hyps"].append(hyp_tokens)
        group["refs"].append(ref_tokens)
        group["saris"].append(sari_score)
        if semantic_score is not None:
            group["semantics"].append(semantic_score)

    aggregates = []
    for (corpus_id, model_id, strategy) in sorted(groups):
        group = groups[(corpus_id, model_id, strategy)]
        aggregates.append(AggregateRecord(
            corpus_id=corpus_id,
            model_id=model_id,
            strategy=strategy,
            n_items=len(group["hyps"]),
            bleu=bleu(group["hyps"], group["refs"]),
            sari=_mean(group["saris"]),
            semantic_f1=_mean(group["semantics"]),
        ))
    return records, aggregates


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def write_metric_report(records, aggregates, csv_path, jsonl_path) -> None:
    """Aggregate CSV plus per-item JSONL."""
    csv_path = Path(csv_path)
    with csv_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["corpus", "model", "strategy", "n_items",
                         "bleu", "sari", "semantic_f1"])
        for agg in aggregates:
            writer.writerow([agg.corpus_id, agg.model_id, agg.strategy,
                             agg.n_items, _fmt(agg.bleu), _fmt(agg.sari),
                             _fmt(agg.semantic_f1)])
    jsonl_path = Path(jsonl_path)
    with jsonl_path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_json(), ensure_ascii=False,
                                sort_keys=True) + "\n")
