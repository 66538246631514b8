"""Corpus loading, translation augmentation, and similarity filtering.

The canonical unit is the SentencePair: one complex source sentence with one
or more reference simplifications and a language direction. Monolingual
corpora enter flagged `monolingual_origin` and leave the augmentation step as
proper cross-lingual pairs, with every original text preserved under
`provenance` so reports can tell natively cross-lingual data from
machine-translated references.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .errors import (
    CorpusIoError,
    DegenerateVector,
    DimensionMismatch,
    EmptyCorpus,
    FormatError,
    TranslationBackendError,
)

LANGS = ("en", "fr")
SPLITS = ("train", "test")


@dataclass
class SentencePair:
    id: str
    source: str
    references: list[str]
    source_lang: str
    target_lang: str
    corpus_id: str = ""
    split: str = "test"
    monolingual_origin: bool = False
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        data = asdict(self)
        if not data["monolingual_origin"]:
            del data["monolingual_origin"]
        if not data["provenance"]:
            del data["provenance"]
        return data


@dataclass
class SimilarityDecision:
    pair_id: str
    score: float
    kept: bool
    threshold: float


def _validate_row(row: dict, row_no: int) -> SentencePair:
    for key in ("id", "source", "references", "source_lang", "target_lang"):
        if key not in row:
            raise FormatError(row_no, f"missing field {key!r}")
    refs = row["references"]
    if not isinstance(refs, list) or not refs:
        raise FormatError(row_no, "references must be a non-empty list")
    refs = [str(r).strip() for r in refs]
    source = str(row["source"]).strip()
    if not source or any(not r for r in refs):
        raise FormatError(row_no, "empty text after whitespace trim")
    source_lang = row["source_lang"]
    target_lang = row["target_lang"]
    if source_lang not in LANGS or target_lang not in LANGS:
        raise FormatError(row_no, f"language codes must be one of {LANGS}")
    split = row.get("split", "test")
    if split not in SPLITS:
        raise FormatError(row_no, f"split must be one of {SPLITS}")
    monolingual = bool(row.get("monolingual_origin", source_lang == target_lang))
    if source_lang == target_lang and not monolingual:
        raise FormatError(
            row_no, "source_lang == target_lang requires monolingual_origin")
    return SentencePair(
        id=str(row["id"]),
        source=source,
        references=refs,
        source_lang=source_lang,
        target_lang=target_lang,
        corpus_id=str(row.get("corpus_id", "")),
        split=split,
        monolingual_origin=monolingual,
        provenance=dict(row.get("provenance", {})),
    )


def load_corpus(
    path,
    fmt: str = "jsonl",
    *,
    source_lang: str = "en",
    target_lang: str = "en",
    corpus_id: str | None = None,
    split: str = "test",
    strict: bool = True,
    errors: list | None = None,
) -> list[SentencePair]:
    """Load and validate a corpus file.

    JSONL rows carry their own metadata; TSV rows (columns id, source,
    reference) take direction/corpus metadata from the keyword arguments and
    rows sharing an id merge into one multi-reference pair.

    With strict=True the first malformed row raises FormatError; otherwise
    malformed rows are skipped and their FormatErrors appended to `errors`.
    """
    path = Path(path)
    if not path.is_file():
        raise CorpusIoError(f"cannot read corpus file: {path}")
    if fmt not in ("jsonl", "tsv"):
        raise CorpusIoError(f"unknown corpus format: {fmt}")
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusIoError(str(exc)) from exc

    pairs: list[SentencePair] = []
    merged: dict[str, SentencePair] = {}
    for row_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            if fmt == "jsonl":
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise FormatError(row_no, f"invalid JSON: {exc.msg}") from exc
                if not isinstance(row, dict):
                    raise FormatError(row_no, "row is not a JSON object")
                pairs.append(_validate_row(row, row_no))
            else:
                cols = line.split("\t")
                if row_no == 1 and [c.strip().lower() for c in cols[:3]] == ["id", "source", "reference"]:
                    continue
                if len(cols) != 3:
                    raise FormatError(row_no, f"expected 3 TSV columns, got {len(cols)}")
                pair_id, source, reference = (c.strip() for c in cols)
                if not pair_id or not source or not reference:
                    raise FormatError(row_no, "empty text after whitespace trim")
                if pair_id in merged:
                    merged[pair_id].references.append(reference)
                else:
                    merged[pair_id] = _validate_row(
                        {
                            "id": pair_id,
                            "source": source,
                            "references": [reference],
                            "source_lang": source_lang,
                            "target_lang": target_lang,
                            "corpus_id": corpus_id or path.stem,
                            "split": split,
                        },
                        row_no,
                    )
                    pairs.append(merged[pair_id])
        except FormatError as exc:
            if strict:
                raise
            if errors is not None:
                errors.append(exc)
    if not pairs:
        raise EmptyCorpus(f"no valid pairs in {path}")
    return pairs


def save_corpus(pairs, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(json.dumps(pair.to_json(), ensure_ascii=False, sort_keys=True) + "\n")


def other_language(lang: str) -> str:
    return "fr" if lang == "en" else "en"


def _translate_pair(pair: SentencePair, mt):
    target = other_language(pair.source_lang)
    translated = mt.translate([pair.source] + pair.references,
                              pair.source_lang, target)
    if len(translated) != len(pair.references) + 1:
        raise TranslationBackendError("translation count mismatch")
    provenance = dict(pair.provenance)
    provenance.update({
        "original_lang": pair.source_lang,
        "original_references": list(pair.references),
        "translated_source": translated[0],
        "machine_translated_references": True,
    })
    return SentencePair(
        id=pair.id,
        source=pair.source,
        references=[t.strip() for t in translated[1:]],
        source_lang=pair.source_lang,
        target_lang=target,
        corpus_id=pair.corpus_id,
        split=pair.split,
        monolingual_origin=False,
        provenance=provenance,
    )


def augment_with_translation(pairs, mt, *, failures: list | None = None,
                             max_workers: int = 1) -> list[SentencePair]:
    """Translate monolingual pairs into the other language.

    The source text stays in its original language; references are replaced
    by their translations and the pair's target flips. Originals plus the
    translated source land in `provenance`. Pairs that fail translation are
    reported: appended to `failures` when given, raised otherwise. Requests
    run concurrently up to max_workers; output order follows input order.
    """
    results: dict[int, SentencePair] = {}
    failed: list[tuple[str, str]] = []

    def work(index: int, pair: SentencePair):
        try:
            results[index] = _translate_pair(pair, mt)
        except TranslationBackendError as exc:
            failed.append((pair.id, str(exc)))

    todo = [(i, pair) for i, pair in enumerate(pairs) if pair.monolingual_origin]
    if max_workers > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(lambda args: work(*args), todo))
    else:
        for index, pair in todo:
            work(index, pair)
    if failed:
        failed.sort(key=lambda item: item[0])
        if failures is not None:
            failures.extend(failed)
        else:
            ids = ", ".join(pair_id for pair_id, _ in failed)
            raise TranslationBackendError(
                f"translation failed for {len(failed)} pair(s): {ids}")
    return [results.get(i, pair) for i, pair in enumerate(pairs)
            if i in results or not pair.monolingual_origin]


def cosine(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DimensionMismatch(f"vector dims {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise DegenerateVector("zero-norm vector has no cosine similarity")
    return float(np.dot(u, v) / (nu * nv))


def _embed_all(embedder, texts: list[str], max_workers: int, batch_size: int) -> list:
    if max_workers <= 1 or len(texts) <= batch_size:
        return list(embedder.embed(texts))
    chunks = [texts[i:i + batch_size] for i in range(0, len(texts), batch_size)]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(embedder.embed, chunks))
    return [vec for chunk in results for vec in chunk]


def filter_by_similarity(
    pairs,
    embedder,
    threshold: float = 0.6,
    *,
    max_workers: int = 1,
    batch_size: int = 64,
) -> tuple[list[SentencePair], list[SimilarityDecision]]:
    """Keep pairs whose source/reference similarity reaches the threshold.

    The similarity of a pair is the maximum cosine between the source
    embedding and any reference embedding; the comparison is inclusive, so a
    score exactly at the threshold survives. Decisions cover every input pair
    in input order.
    """
    texts: list[str] = []
    for pair in pairs:
        texts.append(pair.source)
        texts.extend(pair.references)
    if not texts:
        return [], []
    vectors = _embed_all(embedder, texts, max_workers, batch_size)
    if len(vectors) != len(texts):
        raise DimensionMismatch(
            f"embedder returned {len(vectors)} vectors for {len(texts)} texts")
    kept: list[SentencePair] = []
    decisions: list[SimilarityDecision] = []
    cursor = 0
    for pair in pairs:
        src_vec = vectors[cursor]
        ref_vecs = vectors[cursor + 1:cursor + 1 + len(pair.references)]
        cursor += 1 + len(pair.references)
        score = max(cosine(src_vec, ref_vec) for ref_vec in ref_vecs)
        keep = score >= threshold
        decisions.append(SimilarityDecision(pair.id, score, keep, threshold))
        if keep:
            kept.append(pair)
    return kept, decisions
