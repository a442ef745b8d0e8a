"""Append-only JSON-lines result cache.

Records are keyed by a SHA-256 over spec, command, parameters and the code
version tag.  Unreadable lines are skipped with a warning and the result is
recomputed.  A random share of hits (10% by default) is recomputed on every
run and compared with the stored payload.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import threading
from datetime import datetime, timezone
from pathlib import Path

from twoclosure import __version__
from twoclosure.errors import VerificationFailure

log = logging.getLogger(__name__)

CACHE_ENV = "TWOCLOSURE_CACHE"
VERSION_TAG = f"twoclosure-{__version__}"
RECHECK_FRACTION = 0.1


def record_key(spec: str, command: str, params: dict) -> str:
    blob = json.dumps(
        {"spec": spec, "command": command, "params": params, "version": VERSION_TAG},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def default_cache_path() -> Path | None:
    value = os.environ.get(CACHE_ENV)
    return Path(value) if value else None


class ResultCache:
    def __init__(self, path, recheck_fraction: float = RECHECK_FRACTION, rng: random.Random | None = None):
        self.path = Path(path)
        self.recheck_fraction = recheck_fraction
        self.rng = rng or random.Random()
        self.records: dict[str, dict] = {}
        self.hits = self.misses = self.rechecked = 0
        self._lock = threading.Lock()
        self._load()

    def _load(self):
        if not self.path.exists():
            return
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                key = rec["hash"]
                rec["payload"]
            except (json.JSONDecodeError, KeyError, TypeError):
                log.warning("cache %s line %d is corrupt; ignoring it", self.path, lineno)
                continue
            self.records[key] = rec

    def get(self, key: str):
        rec = self.records.get(key)
        return None if rec is None else rec["payload"]

    def put(self, key: str, spec: str, command: str, params: dict, payload) -> None:
        rec = {
            "hash": key,
            "spec": spec,
            "command": command,
            "params": params,
            "version": VERSION_TAG,
            "payload": payload,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fh.write(json.dumps(rec) + "\n")
            self.records[key] = rec

    def fetch(self, spec: str, command: str, params: dict, compute):
        """Cached payload, or compute() stored; some hits are recomputed and compared."""
        key = record_key(spec, command, params)
        cached = self.get(key)
        if cached is None:
            self.misses += 1
            payload = compute()
            self.put(key, spec, command, params, payload)
            return payload
        self.hits += 1
        if self.rng.random() < self.recheck_fraction:
            self.rechecked += 1
            fresh = compute()
            if json.dumps(fresh, sort_keys=True) != json.dumps(cached, sort_keys=True):
                raise VerificationFailure(f"cached result for {command} {spec!r} differs from a fresh run")
        return cached

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "rechecked": self.rechecked}
