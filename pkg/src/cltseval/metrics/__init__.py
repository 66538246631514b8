from .tokenizer import tokenize_for_metrics
from .bleu import bleu, sentence_bleu
from .sari import sari, sentence_sari
from .semantic import semantic_similarity
from .scoring import MetricRecord, AggregateRecord, score_outputs, write_metric_report

__all__ = [
    "tokenize_for_metrics",
    "bleu",
    "sentence_bleu",
    "sari",
    "sentence_sari",
    "semantic_similarity",
    "MetricRecord",
    "AggregateRecord",
    "score_outputs",
    "write_metric_report",
]
