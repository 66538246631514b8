"""SARI over pre-tokenized text (Xu et al. 2016).

Per order n = 1..4, n-gram multisets of the source and hypothesis are scaled
by the number of references and compared against the summed reference
multiset. The final score averages F1 for additions, F1 for retentions, and
precision only for deletions across the four orders, on a 0..100 scale.

Empty-multiset convention: a precision or recall whose candidate multiset is
empty is 1.0 (its numerator is then necessarily empty too). This makes the
identity transformation score exactly 100 and keeps degenerate inputs (empty
hypotheses, ultra-short sentences) total rather than raising.

The source side must be in the same language as the hypothesis; corpus
preprocessing provides translated sources for that purpose.
"""

from ..errors import EmptyReference, LengthMismatch
from .ngrams import MAX_ORDER, ngram_profile


def _f1(p: float, r: float) -> float:
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def sentence_sari(source, hypothesis, references) -> float:
    """SARI for one (source, hypothesis, references) triple, 0..100."""
    if not references:
        raise EmptyReference("no references for SARI")
    src_profile = ngram_profile(tuple(source))
    hyp_profile = ngram_profile(tuple(hypothesis))
    ref_profiles = [ngram_profile(tuple(ref)) for ref in references]
    numref = len(references)

    keep_sum = 0.0
    del_sum = 0.0
    add_sum = 0.0
    for n in range(MAX_ORDER):
        src_counts = src_profile[n]
        hyp_counts = hyp_profile[n]
        ref_counts: dict = {}
        for profile in ref_profiles:
            for gram, count in profile[n].items():
                ref_counts[gram] = ref_counts.get(gram, 0) + count

        keep_sys = keep_good = keep_ref = 0
        del_sys = del_good = 0
        for gram, s_count in src_counts.items():
            s2 = s_count * numref
            o2 = hyp_counts.get(gram, 0) * numref
            r = ref_counts.get(gram, 0)
            kept = s2 if s2 < o2 else o2
            keep_sys += kept
            keep_good += kept if kept < r else r
            keep_ref += s2 if s2 < r else r
            deleted = s2 - o2
            if deleted > 0:
                del_sys += deleted
                ref_deleted = s2 - r
                if ref_deleted > 0:
                    del_good += deleted if deleted < ref_deleted else ref_deleted
        # deletions the references made are only scored via precision, so the
        # reference-deletion total never forms a denominator
        add_sys = add_good = add_ref = 0
        for gram, o_count in hyp_counts.items():
            added = o_count * numref - src_counts.get(gram, 0) * numref
            if added > 0:
                add_sys += added
                ref_added = ref_counts.get(gram, 0) - src_counts.get(gram, 0) * numref
                if ref_added > 0:
                    add_good += added if added < ref_added else ref_added
        for gram, r_count in ref_counts.items():
            ref_added = r_count - src_counts.get(gram, 0) * numref
            if ref_added > 0:
                add_ref += ref_added

        keep_p = keep_good / keep_sys if keep_sys else 1.0
        keep_r = keep_good / keep_ref if keep_ref else 1.0
        keep_sum += _f1(keep_p, keep_r)
        del_sum += del_good / del_sys if del_sys else 1.0
        add_p = add_good / add_sys if add_sys else 1.0
        add_r = add_good / add_ref if add_ref else 1.0
        add_sum += _f1(add_p, add_r)

    return 100.0 * (keep_sum + del_sum + add_sum) / (3.0 * MAX_ORDER)


def sari(sources, hypotheses, reference_sets) -> float:
    """Corpus SARI: the mean of sentence scores over aligned lists."""
    if not (len(sources) == len(hypotheses) == len(reference_sets)):
        raise LengthMismatch(
            f"sources={len(sources)} hypotheses={len(hypotheses)} "
            f"references={len(reference_sets)}")
    if not sources:
        return 0.0
    scores = [sentence_sari(s, h, r)
              for s, h, r in zip(sources, hypotheses, reference_sets)]
    return sum(scores) / len(scores)
