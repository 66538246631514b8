"""Report bundle: Markdown summary plus machine-readable CSV tables.

Four table families: automatic metrics per (corpus, model) with the best
strategy per metric column in bold, human evaluation means, linguistic
feature means per strategy, and the pairwise significance matrix. The
bundle is deterministic for a given run directory: no timestamps, sorted
keys, fixed float formats.
"""

from __future__ import annotations

import csv
import shutil
from collections import defaultdict
from pathlib import Path

from .errors import MissingArtifact
from .manifest import RunManifest

METRIC_COLUMNS = ("bleu", "sari", "semantic_f1")


def _read_csv(path) -> list[dict]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _fmt(value, digits=2) -> str:
    if value in (None, ""):
        return "-"
    return f"{float(value):.{digits}f}"


def _bold_marks(rows, column) -> set[int]:
    """Indices of rows holding the column maximum (all of them on ties)."""
    values = []
    for i, row in enumerate(rows):
        raw = row.get(column)
        if raw not in (None, ""):
            values.append((float(raw), i))
    if not values:
        return set()
    best = max(v for v, _ in values)
    return {i for v, i in values if v == best}


def _md_table(header: list[str], body: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |",
             "| " + " | ".join("---" for _ in header) + " |"]
    lines.extend("| " + " | ".join(row) + " |" for row in body)
    lines.append("")
    return lines


def _metric_tables(rows) -> list[str]:
    lines = ["## Automatic evaluation metrics", ""]
    by_corpus: dict[str, dict[str, list[dict]]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        by_corpus[row["corpus"]][row["model"]].append(row)
    for corpus in sorted(by_corpus):
        lines.append(f"### Corpus: {corpus}")
        lines.append("")
        for model in sorted(by_corpus[corpus]):
            block = sorted(by_corpus[corpus][model], key=lambda r: r["strategy"])
            lines.append(f"**Model: {model}**")
            lines.append("")
            bold = {col: _bold_marks(block, col) for col in METRIC_COLUMNS}
            body = []
            for i, row in enumerate(block):
                cells = [row["strategy"], row["n_items"]]
                for col in METRIC_COLUMNS:
                    text = _fmt(row.get(col))
                    if i in bold[col] and text != "-":
                        text = f"**{text}**"
                    cells.append(text)
                body.append(cells)
            lines.extend(_md_table(
                ["Strategy", "Items", "BLEU", "SARI", "Semantic F1"], body))
    return lines


def _human_table(rows) -> list[str]:
    lines = ["## Human evaluation averages", ""]
    body = [[row["corpus"], row["strategy"], row["n_ratings"],
             _fmt(row["simplicity"]), _fmt(row["added"]), _fmt(row["removed"])]
            for row in rows]
    lines.extend(_md_table(
        ["Corpus", "Strategy", "Ratings", "Simplicity", "Added", "Removed"], body))
    return lines


def _feature_tables(rows) -> tuple[list[str], list[dict]]:
    feature_names = sorted(
        k for k in rows[0] if k not in ("doc_id", "corpus", "model", "strategy"))
    groups: dict[tuple, list[dict]] = defaultdict(list)
    for row in rows:
        groups[(row["corpus"], row["model"], row["strategy"])].append(row)
    summary = []
    for (corpus, model, strategy) in sorted(groups):
        docs = groups[(corpus, model, strategy)]
        entry = {"corpus": corpus, "model": model, "strategy": strategy,
                 "n_docs": len(docs)}
        for name in feature_names:
            entry[name] = sum(float(d[name]) for d in docs) / len(docs)
        summary.append(entry)

    lines = ["## Linguistic feature means", ""]
    by_corpus_model: dict[tuple, list[dict]] = defaultdict(list)
    for entry in summary:
        by_corpus_model[(entry["corpus"], entry["model"])].append(entry)
    for (corpus, model) in sorted(by_corpus_model):
        lines.append(f"### Corpus: {corpus}, model: {model}")
        lines.append("")
        block = sorted(by_corpus_model[(corpus, model)], key=lambda e: e["strategy"])
        body = [[entry["strategy"]] + [_fmt(entry[name], 3) for name in feature_names]
                for entry in block]
        lines.extend(_md_table(["Strategy"] + feature_names, body))
    return lines, summary


def _significance_table(rows) -> list[str]:
    lines = ["## Pairwise strategy significance (Welch t-test)", ""]
    body = [[row["corpus"], row["model"], row["metric"], row["strategy_a"],
             row["strategy_b"], _fmt(row["t"], 3), _fmt(row["df"], 1),
             f"{float(row['p']):.4g}", row["significant"],
             row["bonferroni_significant"]]
            for row in rows]
    lines.extend(_md_table(
        ["Corpus", "Model", "Metric", "A", "B", "t", "df", "p",
         "significant", "bonferroni"], body))
    return lines


def _iaa_table(rows) -> list[str]:
    lines = ["## Inter-annotator agreement (simulated)", ""]
    body = [[row["dimension"], _fmt(row["median_kappa"], 3),
             _fmt(row["ci_low"], 3), _fmt(row["ci_high"], 3),
             row["n_repeats"], row["seed"]]
            for row in rows]
    lines.extend(_md_table(
        ["Dimension", "Median kappa", "CI low", "CI high", "Repeats", "Seed"], body))
    return lines


def cmd_report(run_dir, out_dir=None) -> Path:
    """Assemble the report bundle for a finished run directory.

    Requires the metrics, features, and stats stages; human means and IAA
    tables are included when their stage ran. Returns the bundle directory.
    """
    run_dir = Path(run_dir)
    manifest = RunManifest(run_dir)
    report_dir = Path(out_dir) if out_dir else run_dir / "report"
    tables_dir = report_dir / "tables"
    tables_dir.mkdir(parents=True, exist_ok=True)

    metrics_csv = run_dir / "metrics" / "metrics.csv"
    features_csv = run_dir / "features" / "features.csv"
    significance_csv = run_dir / "stats" / "significance.csv"
    for stage, path in (("metrics", metrics_csv), ("features", features_csv),
                        ("stats", significance_csv)):
        manifest.require_stage(stage)
        if not path.is_file():
            raise MissingArtifact(stage)

    lines = ["# Cross-lingual simplification evaluation report", ""]
    lines.append("Conventions: SARI's source side is the translated source "
                 "(same language as the hypothesis) when preprocessing "
                 "recorded one.")
    lines.append("Flesch-Kincaid grade uses the English constants for both "
                 "languages; French reading ease uses the Kandel-Moles "
                 "constants.")
    lines.append("Entity identity is the case-folded surface form; entity "
                 "distances are token-offset gaps between mention starts, 0 "
                 "when fewer than two mentions exist.")
    lines.append("Agreement confidence intervals are 2.5/97.5 percentiles "
                 "over simulation repeats.")
    lines.append("")

    metric_rows = _read_csv(metrics_csv)
    lines.extend(_metric_tables(metric_rows))
    shutil.copyfile(metrics_csv, tables_dir / "metrics.csv")

    human_csv = run_dir / "iaa" / "human_means.csv"
    if human_csv.is_file():
        human_rows = _read_csv(human_csv)
        lines.extend(_human_table(human_rows))
        shutil.copyfile(human_csv, tables_dir / "human_means.csv")

    feature_rows = _read_csv(features_csv)
    if feature_rows:
        feature_lines, summary = _feature_tables(feature_rows)
        lines.extend(feature_lines)
        if summary:
            names = [k for k in summary[0] if k not in ("corpus", "model",
                                                        "strategy", "n_docs")]
            with (tables_dir / "features_summary.csv").open(
                    "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["corpus", "model", "strategy", "n_docs"] + names)
                for entry in summary:
                    writer.writerow(
                        [entry["corpus"], entry["model"], entry["strategy"],
                         entry["n_docs"]] + [f"{entry[n]:.6f}" for n in names])
    shutil.copyfile(features_csv, tables_dir / "features.csv")

    significance_rows = _read_csv(significance_csv)
    lines.extend(_significance_table(significance_rows))
    shutil.copyfile(significance_csv, tables_dir / "significance.csv")

    iaa_csv = run_dir / "iaa" / "iaa.csv"
    if iaa_csv.is_file():
        iaa_rows = _read_csv(iaa_csv)
        lines.extend(_iaa_table(iaa_rows))
        shutil.copyfile(iaa_csv, tables_dir / "iaa.csv")

    (report_dir / "report.md").write_text("\n".join(lines) + "\n",
                                          encoding="utf-8")
    return report_dir
