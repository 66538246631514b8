"""Pairwise strategy significance tests over metric or feature tables.

For every (corpus, model, metric) cell, all strategy pairs get a Welch
t-test at alpha = 0.05 with no multiple-comparison correction; a Bonferroni
column (alpha divided by the number of pairs in the cell) is emitted
alongside for the reader.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .ttest import TestResult, welch_t_test


@dataclass
class ScoreRow:
    corpus: str
    model: str
    strategy: str
    metric: str
    value: float


@dataclass
class SignificanceEntry:
    corpus: str
    model: str
    metric: str
    test: TestResult
    bonferroni_significant: bool


def compare_strategies(rows, alpha: float = 0.05) -> list[SignificanceEntry]:
    cells: dict[tuple, dict[str, list[float]]] = {}
    for row in rows:
        cell = cells.setdefault((row.corpus, row.model, row.metric), {})
        cell.setdefault(row.strategy, []).append(row.value)

    entries: list[SignificanceEntry] = []
    for (corpus, model, metric) in sorted(cells):
        samples = cells[(corpus, model, metric)]
        pairs = list(combinations(sorted(samples), 2))
        if not pairs:
            continue
        corrected = alpha / len(pairs)
        for strategy_a, strategy_b in pairs:
            test = welch_t_test(samples[strategy_a], samples[strategy_b],
                                alpha=alpha, group_a=strategy_a,
                                group_b=strategy_b, metric_name=metric)
            entries.append(SignificanceEntry(
                corpus=corpus, model=model, metric=metric, test=test,
                bonferroni_significant=test.p_value < corrected))
    return entries


def write_significance_report(entries, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["corpus", "model", "metric", "strategy_a", "strategy_b",
                         "t", "df", "p", "significant", "bonferroni_significant"])
        for entry in entries:
            test = entry.test
            writer.writerow([
                entry.corpus, entry.model, entry.metric,
                test.group_a, test.group_b,
                f"{test.t_stat:.6f}", f"{test.df:.6f}", f"{test.p_value:.6g}",
                str(test.significant).lower(),
                str(entry.bonferroni_significant).lower(),
            ])
