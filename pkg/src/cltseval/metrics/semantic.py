"""Greedy token-matching embedding similarity (BERTScore-style).

Precision is the mean over hypothesis tokens of the best cosine against any
reference token; recall is symmetric; F1 is their harmonic mean. No IDF
weighting and no baseline rescaling. Token vectors come from an external
per-language provider; this module only consumes them.
"""

import numpy as np

from ..errors import DegenerateVector, DimensionMismatch, EmptySequence


def _unit_rows(vectors, side: str) -> np.ndarray:
    arr = np.asarray(vectors, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{side} vectors are ragged or not 2-D")
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms == 0.0):
        raise DegenerateVector(f"zero-norm vector among {side} tokens")
    return arr / norms[:, None]


def semantic_similarity(hyp_vectors, ref_vectors) -> tuple[float, float, float]:
    """Return (precision, recall, f1) for two token-vector sequences."""
    if len(hyp_vectors) == 0 or len(ref_vectors) == 0:
        raise EmptySequence("semantic similarity needs non-empty token sequences")
    hyp = _unit_rows(hyp_vectors, "hypothesis")
    ref = _unit_rows(ref_vectors, "reference")
    if hyp.shape[1] != ref.shape[1]:
        raise DimensionMismatch(
            f"hypothesis dim {hyp.shape[1]} != reference dim {ref.shape[1]}")
    cosines = hyp @ ref.T
    precision = float(cosines.max(axis=1).mean())
    recall = float(cosines.max(axis=0).mean())
    # harmonic mean where it is defined (both sides positive); otherwise the
    # worse of the two, keeping f1 <= max(precision, recall) for any vectors
    if precision > 0.0 and recall > 0.0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = min(precision, recall)
    return precision, recall, f1
