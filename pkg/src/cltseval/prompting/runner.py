"""Strategy execution with caching, retries, and resumable batch runs.

Responses are cached keyed by (model, strategy, pair, prompt digest) so a
rerun of an identical matrix issues zero backend calls and reproduces the
original outputs byte for byte, original timestamps included. Matrix runs
append finished outputs to JSONL as they complete; a killed run resumes by
skipping items already present in the output file.
"""

from __future__ import annotations

import hashlib
import json
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..errors import BackendError, CltsEvalError, ConfigError, EmptyResponse
from .strategies import DEFAULT_SYSTEM_PROMPT, Strategy, build_prompts


@dataclass
class GenerationConfig:
    temperature: float = 1.0
    top_p: float = 1.0
    system_prompt: str = DEFAULT_SYSTEM_PROMPT
    max_retries: int = 2
    parallelism: int = 1
    backoff: float = 0.5

    def __post_init__(self):
        if self.temperature < 0:
            raise ConfigError("temperature must be >= 0")
        if not 0 < self.top_p <= 1:
            raise ConfigError("top_p must be in (0, 1]")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be >= 0")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")


@dataclass
class SystemOutput:
    pair_id: str
    strategy: Strategy
    model_id: str
    hypothesis: str
    intermediate: str | None
    prompt_log: list[tuple[str, str, str]] = field(default_factory=list)
    created_at: str = ""

    def to_json(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "strategy": self.strategy.value,
            "model_id": self.model_id,
            "hypothesis": self.hypothesis,
            "intermediate": self.intermediate,
            "prompt_log": [list(entry) for entry in self.prompt_log],
            "created_at": self.created_at,
        }

    @classmethod
    def from_json(cls, row: dict) -> "SystemOutput":
        return cls(
            pair_id=row["pair_id"],
            strategy=Strategy(row["strategy"]),
            model_id=row["model_id"],
            hypothesis=row["hypothesis"],
            intermediate=row.get("intermediate"),
            prompt_log=[tuple(entry) for entry in row.get("prompt_log", [])],
            created_at=row.get("created_at", ""),
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ResponseCache:
    """Concurrent-writer-safe response cache, optionally file-backed.

    The persistent form is append-only JSONL: partial writes from a killed
    run cost at most re-requesting the interrupted entry.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path else None
        self._entries: dict[str, tuple[str, str]] = {}
        self._lock = threading.Lock()
        if self.path and self.path.is_file():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                    self._entries[row["key"]] = (row["response"], row["created_at"])
                except (json.JSONDecodeError, KeyError):
                    continue  # truncated tail from an interrupted run

    @staticmethod
    def key(model_id: str, strategy: Strategy, pair_id: str,
            system_prompt: str, user_prompt: str,
            temperature: float, top_p: float) -> str:
        prompt_digest = hashlib.sha256(json.dumps(
            [system_prompt, user_prompt, temperature, top_p],
            ensure_ascii=False).encode("utf-8")).hexdigest()
        return f"{model_id}|{Strategy(strategy).value}|{pair_id}|{prompt_digest}"

    def get(self, key: str) -> tuple[str, str] | None:
        with self._lock:
            return self._entries.get(key)

    def put(self, key: str, response: str, created_at: str) -> None:
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = (response, created_at)
            if self.path:
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(
                        {"key": key, "response": response, "created_at": created_at},
                        ensure_ascii=False) + "\n")

    def __len__(self) -> int:
        return len(self._entries)


def _call_with_retries(backend, system_prompt, user_prompt, cfg, sleep=time.sleep):
    last = None
    for attempt in range(cfg.max_retries + 1):
        try:
            return backend.complete(system_prompt, user_prompt,
                                    cfg.temperature, cfg.top_p)
        except Exception as exc:
            last = exc
            if attempt < cfg.max_retries:
                sleep(cfg.backoff * (2 ** attempt) + random.uniform(0, cfg.backoff))
    raise BackendError(
        f"{backend.model_id} failed after {cfg.max_retries + 1} attempts: {last}"
    ) from last


def run_strategy(strategy: Strategy, pair, backend, cfg: GenerationConfig,
                 cache: ResponseCache | None = None,
                 sleep=time.sleep) -> SystemOutput:
    """Execute one strategy for one pair, returning a full provenance record.

    Decomposition strategies make two strictly sequential calls; the first
    response is whitespace-trimmed before being spliced into the second
    prompt.
    """
    strategy = Strategy(strategy)
    prompts = build_prompts(strategy, pair.source, pair.target_lang)
    prompt_log: list[tuple[str, str, str]] = []
    intermediate = None
    created_at = ""
    user_prompt = prompts[0]
    response = ""
    for step in range(strategy.n_calls):
        if step == 1:
            user_prompt = prompts[1] + intermediate
        key = None
        cached = None
        if cache is not None:
            key = cache.key(backend.model_id, strategy, pair.id,
                            cfg.system_prompt, user_prompt,
                            cfg.temperature, cfg.top_p)
            cached = cache.get(key)
        if cached is not None:
            response, created_at = cached
        else:
            response = _call_with_retries(backend, cfg.system_prompt,
                                          user_prompt, cfg, sleep=sleep)
            if not response or not response.strip():
                raise EmptyResponse(
                    f"{backend.model_id} returned whitespace only for "
                    f"pair {pair.id} ({strategy.value} step {step + 1})")
            created_at = _now()
            if cache is not None:
                cache.put(key, response, created_at)
        prompt_log.append((cfg.system_prompt, user_prompt, response))
        if step == 0 and strategy.is_decomposition:
            intermediate = response.strip()
    return SystemOutput(
        pair_id=pair.id,
        strategy=strategy,
        model_id=backend.model_id,
        hypothesis=response.strip(),
        intermediate=intermediate,
        prompt_log=prompt_log,
        created_at=created_at,
    )


def load_outputs(path) -> list[SystemOutput]:
    path = Path(path)
    outputs = []
    if not path.is_file():
        return outputs
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            outputs.append(SystemOutput.from_json(json.loads(line)))
        except (json.JSONDecodeError, KeyError):
            continue  # truncated tail from an interrupted run
    return outputs


def run_matrix(pairs, strategies, backends, cfg: GenerationConfig,
               cache: ResponseCache | None = None,
               out_path=None, resume: bool = True,
               error_ledger: list | None = None,
               sleep=time.sleep) -> list[SystemOutput]:
    """Attempt the full pairs x strategies x backends cross product.

    Per-item failures are recorded in the error ledger and never abort the
    run. Finished outputs are appended to `out_path` immediately, making the
    run resumable; on resume, items already present are not re-requested.
    Results come back in cross-product order regardless of parallelism.
    """
    if not pairs or not strategies or not backends:
        raise ConfigError("run_matrix needs non-empty pairs, strategies, and backends")
    strategies = [Strategy(s) for s in strategies]
    existing: dict[tuple, SystemOutput] = {}
    out_path = Path(out_path) if out_path else None
    if out_path and resume:
        for output in load_outputs(out_path):
            existing[(output.pair_id, output.strategy, output.model_id)] = output

    ledger = error_ledger if error_ledger is not None else []
    write_lock = threading.Lock()
    results: dict[tuple, SystemOutput] = dict(existing)

    def task(pair, strategy, backend):
        item_key = (pair.id, strategy, backend.model_id)
        try:
            output = run_strategy(strategy, pair, backend, cfg, cache, sleep=sleep)
        except CltsEvalError as exc:
            # backend failures and bad items alike go to the ledger; only a
            # total outage should stop a long run
            ledger.append({"pair_id": pair.id, "strategy": strategy.value,
                           "model_id": backend.model_id, "error": str(exc)})
            return
        with write_lock:
            results[item_key] = output
            if out_path:
                with out_path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(output.to_json(), ensure_ascii=False) + "\n")

    todo = [(pair, strategy, backend)
            for pair in pairs for strategy in strategies for backend in backends
            if (pair.id, strategy, backend.model_id) not in existing]
    if cfg.parallelism > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            list(pool.map(lambda args: task(*args), todo))
    else:
        for args in todo:
            task(*args)

    ordered = []
    for pair in pairs:
        for strategy in strategies:
            for backend in backends:
                output = results.get((pair.id, strategy, backend.model_id))
                if output is not None:
                    ordered.append(output)
    return ordered
