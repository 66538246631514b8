"""Command-line pipeline: preprocess -> generate -> features -> metrics ->
stats -> iaa -> report.

Every stage reads the shared TOML config, writes its artifacts under the run
directory, and records them in the manifest; later stages consume only
manifest-listed files. Exit codes: 0 success, 1 config error, 2 data error,
3 backend error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from pathlib import Path

from .clients import make_embedder, make_token_embedder, make_translator
from .config import RunConfig, load_config
from .corpus import (
    augment_with_translation,
    filter_by_similarity,
    load_corpus,
    save_corpus,
)
from .errors import (
    BackendError,
    CltsEvalError,
    ConfigError,
    EmbeddingBackendError,
    TranslationBackendError,
)
from .features import extract_features, load_resources, parse_conllu
from .features.extract import FEATURE_NAMES
from .manifest import RunManifest, config_digest
from .metrics import score_outputs, write_metric_report
from .prompting import GenerationConfig, ResponseCache, load_outputs, make_backend, run_matrix
from .report import cmd_report
from .stats import (
    ScoreRow,
    compare_strategies,
    human_eval_summary,
    iaa_simulation,
    load_ratings,
    write_significance_report,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_BACKEND = 3


def _manifest(cfg: RunConfig, config_path=None) -> RunManifest:
    run_dir = Path(cfg.output_dir)
    try:
        run_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"output_dir is not writable: {exc}") from exc
    digest = config_digest(config_path) if config_path else ""
    return RunManifest(run_dir, config_hash=digest)


def _load_kept_corpora(cfg: RunConfig, manifest: RunManifest) -> dict[str, list]:
    manifest.require_stage("preprocess")
    corpora = {}
    for corpus_cfg in cfg.corpora:
        kept_path = Path(cfg.output_dir) / "preprocess" / f"{corpus_cfg.name}.kept.jsonl"
        corpora[corpus_cfg.name] = load_corpus(kept_path, "jsonl")
    return corpora


def stage_preprocess(cfg: RunConfig, config_path=None) -> dict:
    manifest = _manifest(cfg, config_path)
    out_dir = Path(cfg.output_dir) / "preprocess"
    out_dir.mkdir(parents=True, exist_ok=True)
    embedder = make_embedder(cfg.services.embedding_url,
                             cfg.services.embedding_key_env or None)
    translator = make_translator(cfg.services.translation_url,
                                 cfg.services.translation_key_env or None)
    counts = {}
    artifacts = []
    n_errors = 0
    for corpus_cfg in cfg.corpora:
        if not Path(corpus_cfg.path).is_file():
            raise ConfigError(f"corpus path not found: {corpus_cfg.path}")
        pairs = load_corpus(
            corpus_cfg.path, corpus_cfg.format,
            source_lang=corpus_cfg.source_lang,
            target_lang=corpus_cfg.target_lang,
            corpus_id=corpus_cfg.name, split=corpus_cfg.split)
        failures: list = []
        if cfg.filter_order == "before_translation":
            pairs, decisions = filter_by_similarity(
                pairs, embedder, cfg.thresholds.similarity)
            kept = augment_with_translation(pairs, translator, failures=failures)
            filtered_ids = {d.pair_id for d in decisions if not d.kept}
        else:
            pairs = augment_with_translation(pairs, translator, failures=failures)
            kept, decisions = filter_by_similarity(
                pairs, embedder, cfg.thresholds.similarity)
            filtered_ids = {d.pair_id for d in decisions if not d.kept}
        n_errors += len(failures)
        for pair_id, reason in failures:
            print(f"translation failed for {pair_id}: {reason}", file=sys.stderr)

        kept_path = out_dir / f"{corpus_cfg.name}.kept.jsonl"
        filtered_path = out_dir / f"{corpus_cfg.name}.filtered.jsonl"
        decisions_path = out_dir / f"{corpus_cfg.name}.decisions.jsonl"
        save_corpus(kept, kept_path)
        save_corpus([p for p in pairs if p.id in filtered_ids], filtered_path)
        with decisions_path.open("w", encoding="utf-8") as fh:
            for decision in decisions:
                fh.write(json.dumps({
                    "pair_id": decision.pair_id,
                    "score": decision.score,
                    "kept": decision.kept,
                    "threshold": decision.threshold,
                }, sort_keys=True) + "\n")
        counts[corpus_cfg.name] = {"input": len(decisions), "kept": len(kept),
                                   "filtered": len(decisions) - len(kept)}
        artifacts.extend([kept_path, filtered_path, decisions_path])
    manifest.record_stage("preprocess", item_counts=counts,
                          artifacts=artifacts, errors=n_errors)
    return counts


def stage_generate(cfg: RunConfig, config_path=None, resume: bool = True) -> dict:
    manifest = _manifest(cfg, config_path)
    corpora = _load_kept_corpora(cfg, manifest)
    out_dir = Path(cfg.output_dir) / "outputs"
    out_dir.mkdir(parents=True, exist_ok=True)
    cache_dir = Path(cfg.output_dir) / "cache"
    cache_dir.mkdir(parents=True, exist_ok=True)
    cache = ResponseCache(cache_dir / "responses.jsonl")
    backends = [make_backend(b.base_url, b.model, b.key_env_var or None, name=b.name)
                for b in cfg.backends]
    counts = {}
    artifacts = []
    ledger: list = []
    for corpus_name, pairs in sorted(corpora.items()):
        for backend in backends:
            for strategy in cfg.strategies:
                out_path = out_dir / f"{corpus_name}__{backend.model_id}__{strategy.value}.jsonl"
                outputs = run_matrix(pairs, [strategy], [backend], cfg.generation,
                                     cache=cache, out_path=out_path,
                                     resume=resume, error_ledger=ledger)
                counts[f"{corpus_name}/{backend.model_id}/{strategy.value}"] = len(outputs)
                artifacts.append(out_path)
    ledger_path = out_dir / "errors.jsonl"
    with ledger_path.open("w", encoding="utf-8") as fh:
        for entry in ledger:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")
    artifacts.append(ledger_path)
    manifest.record_stage("generate", item_counts=counts,
                          artifacts=artifacts, errors=len(ledger))
    if ledger:
        print(f"{len(ledger)} item(s) failed; see {ledger_path}", file=sys.stderr)
    return counts


def stage_features(cfg: RunConfig, config_path=None) -> int:
    manifest = _manifest(cfg, config_path)
    conllu_dir = Path(cfg.features.conllu_dir or (Path(cfg.output_dir) / "annotations"))
    if not conllu_dir.is_dir():
        raise CltsEvalError(f"annotation directory not found: {conllu_dir}")
    out_dir = Path(cfg.output_dir) / "features"
    out_dir.mkdir(parents=True, exist_ok=True)
    resources = {}
    for lang, freq_path, pattern_path in (
            ("en", cfg.features.frequency_list_en, cfg.features.hyphen_patterns_en),
            ("fr", cfg.features.frequency_list_fr, cfg.features.hyphen_patterns_fr)):
        resources[lang] = load_resources(
            lang,
            frequency_path=freq_path or None,
            pattern_path=pattern_path or None,
            top_k=cfg.thresholds.infrequent_rank,
            long_word_letters=cfg.thresholds.long_word_letters,
            short_sentence_words=cfg.thresholds.short_sentence_words)

    rows = []
    for path in sorted(conllu_dir.glob("*.conllu")):
        for doc in parse_conllu(path, default_doc_id=path.stem):
            vector = extract_features(doc, resources[doc.lang])
            parts = doc.doc_id.split("/")
            corpus, model, strategy = (
                (parts[0], parts[1], parts[2]) if len(parts) >= 3 else ("", "", ""))
            rows.append({"doc_id": doc.doc_id, "corpus": corpus,
                         "model": model, "strategy": strategy, **vector})
    rows.sort(key=lambda r: r["doc_id"])
    features_csv = out_dir / "features.csv"
    with features_csv.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id", "corpus", "model", "strategy"] + list(FEATURE_NAMES))
        for row in rows:
            writer.writerow([row["doc_id"], row["corpus"], row["model"],
                             row["strategy"]]
                            + [f"{row[name]:.6f}" for name in FEATURE_NAMES])
    manifest.record_stage("features", item_counts={"documents": len(rows)},
                          artifacts=[features_csv])
    return len(rows)


def stage_metrics(cfg: RunConfig, config_path=None) -> dict:
    manifest = _manifest(cfg, config_path)
    corpora = _load_kept_corpora(cfg, manifest)
    manifest.require_stage("generate")
    out_dir = Path(cfg.output_dir) / "metrics"
    out_dir.mkdir(parents=True, exist_ok=True)
    token_embedder = make_token_embedder(cfg.services.token_embedding_url,
                                         cfg.services.token_embedding_key_env or None)
    all_records = []
    all_aggregates = []
    outputs_dir = Path(cfg.output_dir) / "outputs"
    for corpus_name, pairs in sorted(corpora.items()):
        outputs = []
        for path in sorted(outputs_dir.glob(f"{corpus_name}__*.jsonl")):
            outputs.extend(load_outputs(path))
        if not outputs:
            continue
        records, aggregates = score_outputs(outputs, pairs, token_embedder)
        all_records.extend(records)
        all_aggregates.extend(aggregates)
    all_aggregates.sort(key=lambda a: (a.corpus_id, a.model_id, a.strategy))
    all_records.sort(key=lambda r: (r.corpus_id, r.model_id, r.strategy, r.pair_id))
    metrics_csv = out_dir / "metrics.csv"
    items_jsonl = out_dir / "items.jsonl"
    write_metric_report(all_records, all_aggregates, metrics_csv, items_jsonl)
    meta_path = out_dir / "meta.json"
    meta_path.write_text(json.dumps({
        "sari_source_side": "translated_source_when_available",
        "semantic_metric": "greedy token-matching F1, no IDF, no rescaling",
        "token_embedding_service": cfg.services.token_embedding_url,
    }, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    manifest.record_stage(
        "metrics",
        item_counts={"records": len(all_records), "groups": len(all_aggregates)},
        artifacts=[metrics_csv, items_jsonl, meta_path])
    return {"records": len(all_records)}


def stage_stats(cfg: RunConfig, config_path=None) -> int:
    manifest = _manifest(cfg, config_path)
    manifest.require_stage("metrics")
    out_dir = Path(cfg.output_dir) / "stats"
    out_dir.mkdir(parents=True, exist_ok=True)
    rows: list[ScoreRow] = []
    items_jsonl = Path(cfg.output_dir) / "metrics" / "items.jsonl"
    for line in items_jsonl.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        item = json.loads(line)
        for metric in ("bleu", "sari", "semantic"):
            value = item.get(metric)
            if value is not None:
                rows.append(ScoreRow(item["corpus_id"], item["model_id"],
                                     item["strategy"], metric, float(value)))
    features_csv = Path(cfg.output_dir) / "features" / "features.csv"
    if features_csv.is_file():
        with features_csv.open(encoding="utf-8", newline="") as fh:
            for record in csv.DictReader(fh):
                if not record["strategy"]:
                    continue
                for name in FEATURE_NAMES:
                    rows.append(ScoreRow(record["corpus"], record["model"],
                                         record["strategy"],
                                         f"feature:{name}", float(record[name])))
    # cells need at least two observations per strategy for a t-test
    by_cell: dict[tuple, dict[str, int]] = {}
    for row in rows:
        cell = by_cell.setdefault((row.corpus, row.model, row.metric), {})
        cell[row.strategy] = cell.get(row.strategy, 0) + 1
    usable = [row for row in rows
              if by_cell[(row.corpus, row.model, row.metric)][row.strategy] >= 2]
    entries = compare_strategies(usable, alpha=cfg.alpha)
    significance_csv = out_dir / "significance.csv"
    write_significance_report(entries, significance_csv)
    manifest.record_stage("stats", item_counts={"tests": len(entries)},
                          artifacts=[significance_csv])
    return len(entries)


def stage_iaa(cfg: RunConfig, config_path=None, seed: int | None = None) -> int:
    manifest = _manifest(cfg, config_path)
    if not cfg.iaa.ratings_csv:
        raise ConfigError("iaa.ratings_csv is not configured")
    out_dir = Path(cfg.output_dir) / "iaa"
    out_dir.mkdir(parents=True, exist_ok=True)
    ratings = load_ratings(cfg.iaa.ratings_csv)
    counts: dict[str, int] = {}
    for record in ratings:
        counts[record.item_id] = counts.get(record.item_id, 0) + 1
    singleton = {item for item, n in counts.items() if n < 2}
    if singleton:
        print(f"skipping {len(singleton)} single-rating item(s)", file=sys.stderr)
    usable = [r for r in ratings if r.item_id not in singleton]
    use_seed = cfg.seed if seed is None else seed

    iaa_csv = out_dir / "iaa.csv"
    with iaa_csv.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dimension", "median_kappa", "ci_low", "ci_high",
                         "n_repeats", "seed"])
        for dimension in ("simplicity", "added", "removed"):
            result = iaa_simulation(usable, dimension,
                                    n_repeats=cfg.iaa.n_repeats, seed=use_seed)
            writer.writerow([dimension, f"{result.median_kappa:.6f}",
                             f"{result.ci_low:.6f}", f"{result.ci_high:.6f}",
                             result.n_repeats, result.seed])
    means_csv = out_dir / "human_means.csv"
    with means_csv.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["corpus", "strategy", "n_ratings",
                         "simplicity", "added", "removed"])
        for row in human_eval_summary(ratings):
            writer.writerow([row["corpus"], row["strategy"], row["n_ratings"],
                             f"{row['simplicity']:.6f}", f"{row['added']:.6f}",
                             f"{row['removed']:.6f}"])
    manifest.record_stage("iaa", item_counts={"ratings": len(ratings)},
                          artifacts=[iaa_csv, means_csv])
    return len(ratings)


def stage_report(cfg: RunConfig, out=None) -> Path:
    return cmd_report(cfg.output_dir, out_dir=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cltseval",
        description="Cross-lingual text simplification evaluation pipeline")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {}
    for name, doc in (
            ("preprocess", "translate-augment and similarity-filter corpora"),
            ("generate", "run the strategy x backend matrix"),
            ("features", "extract linguistic features from CoNLL-U annotations"),
            ("metrics", "score outputs with BLEU, SARI, and semantic F1"),
            ("stats", "pairwise strategy significance tests"),
            ("iaa", "inter-annotator agreement simulation"),
            ("report", "assemble the Markdown + CSV report bundle"),
            ("run", "run every configured stage in order")):
        cmd = sub.add_parser(name, help=doc)
        cmd.add_argument("--config", required=True, help="TOML run configuration")
        cmd.add_argument("--out", default=None,
                         help="override the configured output directory")
        cmd.add_argument("--resume", action=argparse.BooleanOptionalAction,
                         default=True, help="reuse existing outputs and cache")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the configured seed")
        commands[name] = cmd
    for name in ("preprocess", "run"):
        commands[name].add_argument(
            "--filter-order", default=None,
            choices=["after_translation", "before_translation"],
            help="when similarity filtering runs relative to translation "
                 "augmentation (default: after, so filtering sees the final "
                 "evaluation texts)")
    return parser


def _run_command(args) -> int:
    cfg = load_config(args.config)
    if args.out:
        cfg.output_dir = args.out
    if args.seed is not None:
        cfg.seed = args.seed
    if getattr(args, "filter_order", None):
        cfg.filter_order = args.filter_order
    command = args.command
    if command == "preprocess":
        stage_preprocess(cfg, args.config)
    elif command == "generate":
        stage_generate(cfg, args.config, resume=args.resume)
    elif command == "features":
        stage_features(cfg, args.config)
    elif command == "metrics":
        stage_metrics(cfg, args.config)
    elif command == "stats":
        stage_stats(cfg, args.config)
    elif command == "iaa":
        stage_iaa(cfg, args.config, seed=args.seed)
    elif command == "report":
        stage_report(cfg)
    elif command == "run":
        stage_preprocess(cfg, args.config)
        stage_generate(cfg, args.config, resume=args.resume)
        if cfg.features.conllu_dir:
            stage_features(cfg, args.config)
        stage_metrics(cfg, args.config)
        stage_stats(cfg, args.config)
        if cfg.iaa.ratings_csv:
            stage_iaa(cfg, args.config, seed=args.seed)
        stage_report(cfg)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return _run_command(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BackendError, TranslationBackendError, EmbeddingBackendError) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except CltsEvalError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
