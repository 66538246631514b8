"""Run configuration: a single TOML file, secrets only via environment
variable names, never inline values."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .prompting import GenerationConfig, Strategy

VALID_STRATEGIES = [s.value for s in Strategy]


@dataclass
class CorpusConfig:
    path: str
    format: str = "jsonl"
    source_lang: str = "en"
    target_lang: str = "fr"
    name: str = ""
    split: str = "test"


@dataclass
class BackendConfig:
    name: str
    base_url: str
    model: str
    key_env_var: str = ""


@dataclass
class Thresholds:
    similarity: float = 0.6
    long_word_letters: int = 7
    short_sentence_words: int = 10
    infrequent_rank: int = 5000


@dataclass
class ServicesConfig:
    embedding_url: str = "mock:"
    embedding_key_env: str = ""
    translation_url: str = "mock:identity"
    translation_key_env: str = ""
    token_embedding_url: str = "mock:"
    token_embedding_key_env: str = ""


@dataclass
class FeatureInputs:
    conllu_dir: str = ""
    frequency_list_en: str = ""
    frequency_list_fr: str = ""
    hyphen_patterns_en: str = ""
    hyphen_patterns_fr: str = ""


@dataclass
class IaaConfig:
    ratings_csv: str = ""
    n_repeats: int = 1000


@dataclass
class RunConfig:
    corpora: list[CorpusConfig]
    backends: list[BackendConfig]
    strategies: list[Strategy]
    output_dir: str
    seed: int = 0
    alpha: float = 0.05
    filter_order: str = "after_translation"
    thresholds: Thresholds = field(default_factory=Thresholds)
    generation: GenerationConfig = field(default_factory=GenerationConfig)
    services: ServicesConfig = field(default_factory=ServicesConfig)
    features: FeatureInputs = field(default_factory=FeatureInputs)
    iaa: IaaConfig = field(default_factory=IaaConfig)


def _build(cls, data: dict, section: str):
    fields = {f for f in cls.__dataclass_fields__}
    unknown = set(data) - fields
    if unknown:
        raise ConfigError(f"[{section}] unknown keys: {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"[{section}]: {exc}") from exc


def parse_config(data: dict, base_dir: Path | None = None) -> RunConfig:
    run = data.get("run", {})
    output_dir = run.get("output_dir")
    if not output_dir:
        raise ConfigError("[run] output_dir is required")
    if base_dir is not None and not Path(output_dir).is_absolute():
        output_dir = str(base_dir / output_dir)

    corpora_raw = data.get("corpora", [])
    if not corpora_raw:
        raise ConfigError("at least one [[corpora]] entry is required")
    corpora = []
    for i, entry in enumerate(corpora_raw):
        if "path" not in entry:
            raise ConfigError(f"[[corpora]] entry {i + 1} needs a path")
        entry = dict(entry)
        if base_dir is not None and not Path(entry["path"]).is_absolute():
            entry["path"] = str(base_dir / entry["path"])
        entry.setdefault("name", Path(entry["path"]).stem)
        corpora.append(_build(CorpusConfig, entry, "corpora"))
        if corpora[-1].format not in ("jsonl", "tsv"):
            raise ConfigError(f"corpus format must be jsonl or tsv, got {corpora[-1].format!r}")

    backends_raw = data.get("backends", [])
    if not backends_raw:
        raise ConfigError("at least one [[backends]] entry is required")
    backends = []
    for i, entry in enumerate(backends_raw):
        entry = dict(entry)
        for key in ("base_url", "model"):
            if key not in entry:
                raise ConfigError(f"[[backends]] entry {i + 1} needs {key}")
        entry.setdefault("name", entry["model"])
        backends.append(_build(BackendConfig, entry, "backends"))

    strategy_names = run.get("strategies", VALID_STRATEGIES)
    if not strategy_names:
        raise ConfigError("at least one strategy is required")
    strategies = []
    for name in strategy_names:
        try:
            strategies.append(Strategy(name))
        except ValueError:
            raise ConfigError(
                f"unknown strategy {name!r}; valid names: {', '.join(VALID_STRATEGIES)}")

    filter_order = data.get("preprocess", {}).get("filter_order", "after_translation")
    if filter_order not in ("after_translation", "before_translation"):
        raise ConfigError(
            "preprocess.filter_order must be after_translation or before_translation")

    features_raw = dict(data.get("features", {}))
    if base_dir is not None:
        for key in ("conllu_dir", "frequency_list_en", "frequency_list_fr",
                    "hyphen_patterns_en", "hyphen_patterns_fr"):
            value = features_raw.get(key)
            if value and not Path(value).is_absolute():
                features_raw[key] = str(base_dir / value)
    iaa_raw = dict(data.get("iaa", {}))
    if base_dir is not None:
        value = iaa_raw.get("ratings_csv")
        if value and not Path(value).is_absolute():
            iaa_raw["ratings_csv"] = str(base_dir / value)

    return RunConfig(
        corpora=corpora,
        backends=backends,
        strategies=strategies,
        output_dir=output_dir,
        seed=int(run.get("seed", 0)),
        alpha=float(data.get("stats", {}).get("alpha", 0.05)),
        filter_order=filter_order,
        thresholds=_build(Thresholds, data.get("thresholds", {}), "thresholds"),
        generation=_build(GenerationConfig, data.get("generation", {}), "generation"),
        services=_build(ServicesConfig, data.get("services", {}), "services"),
        features=_build(FeatureInputs, features_raw, "features"),
        iaa=_build(IaaConfig, iaa_raw, "iaa"),
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    return parse_config(data, base_dir=path.resolve().parent)
