"""Run manifest: one JSON document tracking what every stage produced.

Each stage records its item counts, error count, and every emitted artifact
with a content hash, so later stages (and auditors) consume only files the
manifest names.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import MissingArtifact


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


class RunManifest:
    FILENAME = "manifest.json"

    def __init__(self, run_dir, config_hash: str = ""):
        self.run_dir = Path(run_dir)
        self.path = self.run_dir / self.FILENAME
        if self.path.is_file():
            self.data = json.loads(self.path.read_text(encoding="utf-8"))
        else:
            self.data = {
                "config_hash": config_hash,
                "tool_version": __version__,
                "created_at": datetime.now(timezone.utc).isoformat(),
                "stages": {},
            }
        if config_hash:
            self.data["config_hash"] = config_hash

    def record_stage(self, stage: str, *, item_counts: dict, artifacts,
                     errors: int = 0) -> None:
        entry = {
            "finished_at": datetime.now(timezone.utc).isoformat(),
            "item_counts": dict(item_counts),
            "errors": errors,
            "artifacts": {},
        }
        for artifact in artifacts:
            artifact = Path(artifact)
            rel = str(artifact.relative_to(self.run_dir)) \
                if artifact.is_absolute() else str(artifact)
            entry["artifacts"][rel] = file_sha256(self.run_dir / rel)
        self.data["stages"][stage] = entry
        self.save()

    def require_stage(self, stage: str) -> dict:
        entry = self.data["stages"].get(stage)
        if entry is None:
            raise MissingArtifact(stage)
        for rel in entry["artifacts"]:
            if not (self.run_dir / rel).is_file():
                raise MissingArtifact(stage)
        return entry

    def stage_artifacts(self, stage: str) -> list[Path]:
        entry = self.require_stage(stage)
        return [self.run_dir / rel for rel in sorted(entry["artifacts"])]

    def save(self) -> None:
        self.data["updated_at"] = datetime.now(timezone.utc).isoformat()
        self.run_dir.mkdir(parents=True, exist_ok=True)
        self.path.write_text(
            json.dumps(self.data, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")


def config_digest(config_path) -> str:
    return file_sha256(config_path)
