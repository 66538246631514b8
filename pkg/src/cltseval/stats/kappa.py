"""Quadratic-weighted kappa for ordered rating scales.

kappa = 1 - sum(w * O) / sum(w * E), with weights w_ij = (i - j)^2 / (k - 1)^2
over the observed contingency matrix O. The expected matrix E is the outer
product of the pooled category distribution of both raters, normalized to
the observed total. Pooling makes the statistic symmetric in rater order,
which the agreement simulation relies on: which annotator plays "primary"
per item cannot change the result.
"""

from __future__ import annotations

import numpy as np

from ..errors import LengthMismatch, OutOfRangeCategory, SingleCategoryDegenerate


def quadratic_weighted_kappa(ratings_a, ratings_b, categories) -> float:
    if len(ratings_a) != len(ratings_b):
        raise LengthMismatch(
            f"{len(ratings_a)} vs {len(ratings_b)} ratings")
    if len(ratings_a) == 0:
        raise LengthMismatch("need at least one rating pair")
    categories = list(categories)
    index = {c: i for i, c in enumerate(categories)}
    k = len(categories)
    try:
        idx_a = [index[r] for r in ratings_a]
        idx_b = [index[r] for r in ratings_b]
    except KeyError as exc:
        raise OutOfRangeCategory(f"rating {exc.args[0]!r} outside categories") from exc

    if k == 1:
        if list(ratings_a) == list(ratings_b):
            return 1.0
        raise SingleCategoryDegenerate("one category and raters disagree")

    observed = np.zeros((k, k))
    for i, j in zip(idx_a, idx_b):
        observed[i, j] += 1.0
    n = observed.sum()
    # computing from the symmetrized matrix leaves the statistic unchanged
    # (the weights are symmetric) and makes it bit-exactly independent of
    # which rater is called "a" on any item
    observed = (observed + observed.T) / 2.0

    grid = np.arange(k, dtype=float)
    weights = (grid[:, None] - grid[None, :]) ** 2 / (k - 1) ** 2

    pooled = observed.sum(axis=1)
    expected = np.outer(pooled, pooled) / n

    denom = float((weights * expected).sum())
    numer = float((weights * observed).sum())
    if denom == 0.0:
        # pooled mass on a single category; only possible when both raters
        # used exactly that category, i.e. the vectors are identical
        if numer == 0.0:
            return 1.0
        raise SingleCategoryDegenerate("degenerate expected matrix with disagreement")
    return 1.0 - numer / denom
