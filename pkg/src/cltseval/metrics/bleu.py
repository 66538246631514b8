"""BLEU-4 over pre-tokenized text (Papineni et al. 2002).

Corpus-level scoring is primary: modified n-gram precision clipped against
the per-reference maximum, geometric mean over the orders actually observed
(so a hypothesis shorter than 4 tokens can still reach 100 against itself),
and the brevity penalty exp(1 - r/c) with r accumulated from each sentence's
closest reference length, ties going to the shorter reference.

The sentence-level variant exists for per-item diagnostics only and applies
add-one smoothing to orders with zero matches.
"""

import math

from ..errors import EmptyReference, LengthMismatch
from .ngrams import MAX_ORDER, ngram_profile, reference_max_profile


def _closest_ref_len(hyp_len: int, refs: tuple) -> int:
    best_len = len(refs[0])
    best_diff = abs(best_len - hyp_len)
    for ref in refs[1:]:
        diff = abs(len(ref) - hyp_len)
        if diff < best_diff or (diff == best_diff and len(ref) < best_len):
            best_diff = diff
            best_len = len(ref)
    return best_len


def _corpus_stats(hypotheses, reference_sets):
    if len(hypotheses) != len(reference_sets):
        raise LengthMismatch(
            f"{len(hypotheses)} hypotheses vs {len(reference_sets)} reference sets")
    correct = [0] * MAX_ORDER
    total = [0] * MAX_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, refs in zip(hypotheses, reference_sets):
        if not refs:
            raise EmptyReference("a hypothesis has no references")
        hyp = tuple(hyp)
        refs = tuple(tuple(r) for r in refs)
        hyp_len += len(hyp)
        ref_len += _closest_ref_len(len(hyp), refs)
        hyp_profile = ngram_profile(hyp)
        ref_profile = reference_max_profile(refs)
        for n in range(MAX_ORDER):
            ref_counts = ref_profile[n]
            for gram, count in hyp_profile[n].items():
                clip = ref_counts.get(gram, 0)
                if clip:
                    correct[n] += count if count < clip else clip
                total[n] += count
    return correct, total, hyp_len, ref_len


def _combine(correct, total, hyp_len, ref_len, smooth: bool) -> float:
    if hyp_len == 0:
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(MAX_ORDER):
        if total[n] == 0:
            continue
        orders += 1
        if correct[n] == 0:
            if not smooth:
                return 0.0
            log_sum += math.log((correct[n] + 1) / (total[n] + 1))
        else:
            log_sum += math.log(correct[n] / total[n])
    if orders == 0:
        return 0.0
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * bp * math.exp(log_sum / orders)


def bleu(hypotheses, reference_sets) -> float:
    """Corpus BLEU-4 on a 0..100 scale.

    hypotheses: list of token lists; reference_sets: list of lists of token
    lists, aligned with the hypotheses.
    """
    return _combine(*_corpus_stats(hypotheses, reference_sets), smooth=False)


def sentence_bleu(hypothesis, references) -> float:
    """Diagnostic sentence BLEU with add-one smoothing on zero-match orders."""
    return _combine(*_corpus_stats([hypothesis], [references]), smooth=True)
