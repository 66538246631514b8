"""HTTP clients for the external text services, plus offline stand-ins.

Three services are consumed, never computed in-process:
  - sentence embeddings   POST {"texts": [...]}            -> {"vectors": [...]}
  - translation           POST {"texts", "source_lang", "target_lang"}
                                                           -> {"translations": [...]}
  - token embeddings      POST {"texts", "lang"}           -> {"tokens", "vectors"}

Endpoint strings choose the implementation: http(s):// URLs hit the wire,
"mock:" selects a deterministic in-process provider for dry runs and tests,
and "file:<path>" (token embeddings) reads precomputed JSONL.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from pathlib import Path

import numpy as np
import requests

from .errors import EmbeddingBackendError, TranslationBackendError
from .metrics.tokenizer import tokenize_for_metrics


def post_with_retries(url, payload, *, headers=None, timeout=60.0,
                      max_retries=2, backoff=0.5, error_cls=RuntimeError,
                      sleep=time.sleep):
    """POST JSON with exponential backoff and jitter; raise error_cls when
    the final attempt still fails."""
    last = None
    for attempt in range(max_retries + 1):
        try:
            response = requests.post(url, json=payload, headers=headers or {},
                                     timeout=timeout)
            if response.status_code != 200:
                raise error_cls(f"HTTP {response.status_code}: {response.text[:200]}")
            return response.json()
        except error_cls:
            raise
        except Exception as exc:  # connection errors, timeouts, bad JSON
            last = exc
            if attempt < max_retries:
                sleep(backoff * (2 ** attempt) + random.uniform(0, backoff))
    raise error_cls(f"request to {url} failed after {max_retries + 1} attempts: {last}")


def _auth_headers(key_env: str | None) -> dict:
    if not key_env:
        return {}
    token = os.environ.get(key_env, "")
    return {"Authorization": f"Bearer {token}"} if token else {}


class HttpEmbedder:
    def __init__(self, url, key_env=None, timeout=60.0, max_retries=2, backoff=0.5):
        self.url = url
        self.key_env = key_env
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff

    def embed(self, texts: list[str]) -> list[list[float]]:
        data = post_with_retries(
            self.url, {"texts": list(texts)}, headers=_auth_headers(self.key_env),
            timeout=self.timeout, max_retries=self.max_retries,
            backoff=self.backoff, error_cls=EmbeddingBackendError)
        vectors = data.get("vectors")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise EmbeddingBackendError("malformed embedding response")
        return vectors


class HashEmbedder:
    """Deterministic pseudo-embeddings derived from a text digest.

    Similar only to identical strings; useful for dry runs where real
    semantics are irrelevant but determinism matters.
    """

    def __init__(self, dim: int = 16):
        self.dim = dim

    def _vector(self, text: str) -> list[float]:
        digest = hashlib.sha256(text.encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        vec = rng.standard_normal(self.dim)
        return (vec / np.linalg.norm(vec)).tolist()

    def embed(self, texts: list[str]) -> list[list[float]]:
        return [self._vector(t) for t in texts]


class ConstantEmbedder:
    """Every text maps to the same unit vector: cosine 1.0 everywhere."""

    def __init__(self, dim: int = 4):
        self.dim = dim

    def embed(self, texts: list[str]) -> list[list[float]]:
        vec = [1.0] + [0.0] * (self.dim - 1)
        return [list(vec) for _ in texts]


class HttpTranslator:
    def __init__(self, url, key_env=None, timeout=60.0, max_retries=2, backoff=0.5):
        self.url = url
        self.key_env = key_env
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff

    def translate(self, texts, source_lang, target_lang) -> list[str]:
        data = post_with_retries(
            self.url,
            {"texts": list(texts), "source_lang": source_lang, "target_lang": target_lang},
            headers=_auth_headers(self.key_env), timeout=self.timeout,
            max_retries=self.max_retries, backoff=self.backoff,
            error_cls=TranslationBackendError)
        translations = data.get("translations")
        if not isinstance(translations, list) or len(translations) != len(texts):
            raise TranslationBackendError("malformed translation response")
        return translations


class IdentityTranslator:
    """Pass-through translator for dry runs."""

    def translate(self, texts, source_lang, target_lang) -> list[str]:
        return list(texts)


class TaggingTranslator:
    """Marks texts with the target language; deterministic and visible."""

    def translate(self, texts, source_lang, target_lang) -> list[str]:
        return [f"[{target_lang}] {t}" for t in texts]


class HttpTokenEmbedder:
    def __init__(self, url, key_env=None, timeout=60.0, max_retries=2, backoff=0.5):
        self.url = url
        self.key_env = key_env
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff

    def embed_tokens(self, texts, lang):
        data = post_with_retries(
            self.url, {"texts": list(texts), "lang": lang},
            headers=_auth_headers(self.key_env), timeout=self.timeout,
            max_retries=self.max_retries, backoff=self.backoff,
            error_cls=EmbeddingBackendError)
        tokens = data.get("tokens")
        vectors = data.get("vectors")
        if (not isinstance(tokens, list) or not isinstance(vectors, list)
                or len(tokens) != len(texts) or len(vectors) != len(texts)):
            raise EmbeddingBackendError("malformed token-embedding response")
        return list(zip(tokens, vectors))


class FileTokenEmbedder:
    """Precomputed token embeddings from JSONL, for offline scoring.

    Each line: {"lang": ..., "text": ..., "tokens": [...], "vectors": [[...]]}
    keyed by (lang, text).
    """

    def __init__(self, path):
        path = Path(path)
        if not path.is_file():
            raise EmbeddingBackendError(f"token-embedding file not found: {path}")
        self._table = {}
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            row = json.loads(line)
            self._table[(row["lang"], row["text"])] = (row["tokens"], row["vectors"])

    def embed_tokens(self, texts, lang):
        out = []
        for text in texts:
            try:
                out.append(self._table[(lang, text)])
            except KeyError:
                raise EmbeddingBackendError(
                    f"no precomputed embedding for lang={lang!r} text={text[:60]!r}")
        return out


class HashTokenEmbedder:
    """Deterministic per-token pseudo-embeddings for dry runs."""

    def __init__(self, dim: int = 16):
        self._embedder = HashEmbedder(dim)

    def embed_tokens(self, texts, lang):
        out = []
        for text in texts:
            tokens = tokenize_for_metrics(text, lang)
            out.append((tokens, self._embedder.embed(tokens)))
        return out


def make_embedder(url: str, key_env=None, **kwargs):
    if url.startswith("mock:"):
        return ConstantEmbedder() if url == "mock:constant" else HashEmbedder()
    return HttpEmbedder(url, key_env, **kwargs)


def make_translator(url: str, key_env=None, **kwargs):
    if url.startswith("mock:"):
        return IdentityTranslator() if url == "mock:identity" else TaggingTranslator()
    return HttpTranslator(url, key_env, **kwargs)


def make_token_embedder(url: str, key_env=None, **kwargs):
    if url.startswith("mock:"):
        return HashTokenEmbedder()
    if url.startswith("file:"):
        return FileTokenEmbedder(url[len("file:"):])
    return HttpTokenEmbedder(url, key_env, **kwargs)
