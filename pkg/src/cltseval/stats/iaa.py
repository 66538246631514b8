"""Human ratings: ingestion, summaries, and the agreement simulation.

Each item was judged by two or more annotators on three dimensions:
simplicity on a -2..2 scale, information addition and removal on 0..5
scales. The simulation draws one rating per item as the primary reference,
takes the rounded (half away from zero) mean of the remaining ratings as the
secondary, scores quadratic-weighted kappa across items, and repeats; the
reported statistic is the median kappa with the 2.5/97.5 percentile interval
over repeats. Repeats draw from streams split off the master seed, so the
result is identical at any parallelism level.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import FormatError, InsufficientRatings, ScaleViolation
from .kappa import quadratic_weighted_kappa

DIMENSION_CATEGORIES = {
    "simplicity": list(range(-2, 3)),
    "added": list(range(0, 6)),
    "removed": list(range(0, 6)),
}

_HEADER = ["item_id", "annotator_id", "comparison_base",
           "simplicity", "added", "removed"]


@dataclass
class RatingRecord:
    item_id: str
    annotator_id: str
    simplicity: int
    added: int
    removed: int
    comparison_base: str = "source"

    def value(self, dimension: str) -> int:
        return getattr(self, dimension)


def round_half_away_from_zero(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


def load_ratings(path) -> list[RatingRecord]:
    """Ratings CSV with header item_id, annotator_id, comparison_base,
    simplicity, added, removed. Scale violations name their row."""
    path = Path(path)
    records: list[RatingRecord] = []
    seen: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(1, "empty ratings file")
        if [h.strip() for h in header] != _HEADER:
            raise FormatError(1, f"expected header {','.join(_HEADER)}")
        for row_no, row in enumerate(reader, start=2):
            if not row or not any(cell.strip() for cell in row):
                continue
            if len(row) != len(_HEADER):
                raise FormatError(row_no, f"expected {len(_HEADER)} columns")
            item_id, annotator_id, base = (c.strip() for c in row[:3])
            if not item_id or not annotator_id:
                raise FormatError(row_no, "empty item_id or annotator_id")
            if base not in ("source", "translation"):
                raise FormatError(row_no, "comparison_base must be source|translation")
            values = {}
            for name, cell in zip(("simplicity", "added", "removed"), row[3:]):
                try:
                    value = int(cell)
                except ValueError:
                    raise FormatError(row_no, f"{name} {cell!r} is not an integer")
                if value not in DIMENSION_CATEGORIES[name]:
                    scale = DIMENSION_CATEGORIES[name]
                    raise ScaleViolation(
                        row_no, f"{name}={value} outside [{scale[0]}, {scale[-1]}]")
                values[name] = value
            key = (item_id, annotator_id)
            if key in seen:
                raise FormatError(row_no, f"duplicate rating for {key}")
            seen.add(key)
            records.append(RatingRecord(item_id, annotator_id,
                                        values["simplicity"], values["added"],
                                        values["removed"], base))
    return records


@dataclass
class KappaSimResult:
    dimension: str
    median_kappa: float
    ci_low: float
    ci_high: float
    n_repeats: int
    seed: int


def iaa_simulation(ratings, dimension: str, n_repeats: int = 1000,
                   seed: int = 0) -> KappaSimResult:
    """Simulated inter-annotator agreement on one dimension."""
    if dimension not in DIMENSION_CATEGORIES:
        raise KeyError(f"unknown dimension {dimension!r}")
    categories = DIMENSION_CATEGORIES[dimension]
    by_item: dict[str, list[int]] = {}
    for record in ratings:
        by_item.setdefault(record.item_id, []).append(record.value(dimension))
    for item_id, values in by_item.items():
        if len(values) < 2:
            raise InsufficientRatings(item_id)
    items = [by_item[item_id] for item_id in sorted(by_item)]

    kappas = np.empty(n_repeats)
    for repeat in range(n_repeats):
        rng = np.random.default_rng([seed, repeat])
        primaries = []
        secondaries = []
        for values in items:
            pick = int(rng.integers(len(values)))
            rest = values[:pick] + values[pick + 1:]
            primaries.append(values[pick])
            secondaries.append(round_half_away_from_zero(sum(rest) / len(rest)))
        kappas[repeat] = quadratic_weighted_kappa(primaries, secondaries, categories)
    ci_low, ci_high = np.percentile(kappas, [2.5, 97.5])
    return KappaSimResult(
        dimension=dimension,
        median_kappa=float(np.median(kappas)),
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        n_repeats=n_repeats,
        seed=seed,
    )


def _item_group(item_id: str, groups) -> tuple[str, str]:
    if groups is not None and item_id in groups:
        return tuple(groups[item_id])
    parts = item_id.split("/")
    if len(parts) >= 2:
        return parts[0], parts[1]
    return "", ""


def human_eval_summary(ratings, groups=None) -> list[dict]:
    """Mean simplicity/added/removed per (corpus, strategy) group.

    Grouping uses an explicit item_id -> (corpus, strategy) mapping when
    given, else the "corpus/strategy/..." item_id convention.
    """
    buckets: dict[tuple[str, str], list[RatingRecord]] = {}
    for record in ratings:
        buckets.setdefault(_item_group(record.item_id, groups), []).append(record)
    rows = []
    for (corpus, strategy) in sorted(buckets):
        group = buckets[(corpus, strategy)]
        n = len(group)
        rows.append({
            "corpus": corpus,
            "strategy": strategy,
            "n_ratings": n,
            "simplicity": sum(r.simplicity for r in group) / n,
            "added": sum(r.added for r in group) / n,
            "removed": sum(r.removed for r in group) / n,
        })
    return rows
