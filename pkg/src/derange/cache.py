"""Persistent result cache for the CLI.

One newline-delimited JSON file of {key, value, created_at} records.
Keys canonicalise the request (command, sorted parameters, engine
version), so identical queries hit and a version bump invalidates the
lot.  The cache is advisory: corrupt lines are skipped with a warning
and an unwritable path degrades to no caching; results never change,
only latency.  Writes go to a temp file and are renamed into place, so
concurrent processes sharing a cache directory stay consistent.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
import warnings
from dataclasses import dataclass

ENGINE_VERSION = "0.1.0"
ENV_VAR = "DERANGE_CACHE_DIR"
_FILENAME = "results.jsonl"


@dataclass(frozen=True)
class CacheRecord:
    key: str
    value: dict
    created_at: float

    def to_json(self) -> dict:
        return {"key": self.key, "value": self.value, "created_at": self.created_at}


def cache_dir() -> str:
    return os.environ.get(ENV_VAR, os.path.join(os.getcwd(), ".derange-cache"))


def cache_path() -> str:
    return os.path.join(cache_dir(), _FILENAME)


def cache_key(command: str, params: dict) -> str:
    return json.dumps(
        {"command": command, "params": params, "version": ENGINE_VERSION},
        sort_keys=True,
        separators=(",", ":"),
    )


def _load() -> dict[str, CacheRecord]:
    records: dict[str, CacheRecord] = {}
    try:
        with open(cache_path(), "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                    record = CacheRecord(raw["key"], raw["value"], raw["created_at"])
                except (json.JSONDecodeError, KeyError, TypeError):
                    warnings.warn(f"skipping corrupt cache line {lineno}")
                    continue
                records[record.key] = record
    except OSError:
        pass
    return records


def cache_get(key: str) -> dict | None:
    record = _load().get(key)
    return None if record is None else record.value


def cache_put(key: str, value: dict) -> None:
    records = _load()
    records[key] = CacheRecord(key, value, time.time())
    directory = cache_dir()
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            for record in records.values():
                handle.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
        os.replace(tmp, cache_path())
    except OSError as exc:
        warnings.warn(f"cache disabled, cannot write {directory}: {exc}")
