"""Content-addressed store for CLI reports.

Keys are SHA-256 digests of a canonical JSON request (command, arguments and
the PBW basis-order version). Entries hold the exact report bytes plus the
digest of those bytes, so a truncated or edited entry is detected on read.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path
from typing import Callable, Mapping, Optional, Tuple

from .verma import BASIS_ORDER_VERSION

ENV_VAR = "GCA_CACHE_DIR"


class CorruptCacheEntry(UserWarning):
    pass


def request_digest(request: Mapping, basis_version: int = BASIS_ORDER_VERSION) -> str:
    payload = {"basis_order_version": basis_version, "request": request}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ReportCache:
    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> Optional[bytes]:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
            body = entry["report"].encode("utf-8")
            if hashlib.sha256(body).hexdigest() != entry["sha256"]:
                raise ValueError("checksum mismatch")
            return body
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            warnings.warn(f"corrupt cache entry {path}: {exc}; recomputing", CorruptCacheEntry)
            return None

    def put(self, key: str, body: bytes) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"sha256": hashlib.sha256(body).hexdigest(), "report": body.decode("utf-8")}
        # write-then-rename so concurrent readers never see a partial file
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh)
        os.replace(tmp, path)

    def fetch(self, request: Mapping, compute: Callable[[], bytes]) -> Tuple[bytes, bool]:
        """Return (report bytes, hit)."""
        key = request_digest(request)
        body = self.get(key)
        if body is not None:
            return body, True
        body = compute()
        self.put(key, body)
        return body, False


def resolve_cache_dir(flag: Optional[str]) -> Optional[Path]:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(flag) if flag else None
