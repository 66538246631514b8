"""Shared n-gram counting for the overlap metrics.

Counts are memoized per token tuple: corpus scoring revisits the same
sources and references for every strategy and model, and the exhaustive
verification sweeps revisit tiny sequences millions of times.
"""

from functools import lru_cache

MAX_ORDER = 4


@lru_cache(maxsize=200_000)
def ngram_profile(tokens: tuple) -> tuple:
    """Counts for orders 1..4 as a tuple of dicts keyed by token tuples."""
    profile = []
    for n in range(1, MAX_ORDER + 1):
        counts: dict = {}
        for i in range(len(tokens) - n + 1):
            gram = tokens[i:i + n]
            counts[gram] = counts.get(gram, 0) + 1
        profile.append(counts)
    return tuple(profile)


@lru_cache(maxsize=50_000)
def reference_max_profile(refs: tuple) -> tuple:
    """Per-order counts clipped against the per-reference maximum."""
    profile = []
    for n in range(MAX_ORDER):
        merged: dict = {}
        for ref in refs:
            for gram, count in ngram_profile(ref)[n].items():
                if count > merged.get(gram, 0):
                    merged[gram] = count
        profile.append(merged)
    return tuple(profile)
