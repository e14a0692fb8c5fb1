"""Content-addressed cache for reduced Gröbner bases.

Keys are stable digests of the normalized generator set, the monomial order,
and the field, so identical inputs across runs and processes share results.
The disk layer is optional and controlled by QPLAB_CACHE_DIR (or an explicit
directory); values are stored in the plain polynomial text format.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path


def cache_key(nvars: int, field_token: str, normalized_gens: list[str],
              order_token: str) -> str:
    h = hashlib.sha256()
    h.update(f"ring r={nvars - 1} field={field_token} ord={order_token}\n".encode())
    for g in sorted(normalized_gens):
        h.update(g.encode())
        h.update(b"\n")
    return h.hexdigest()


class DiskCache:
    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.gb"

    def get(self, key: str) -> list[str] | None:
        if self.directory is None:
            return None
        path = self._path(key)
        if not path.is_file():
            self.misses += 1
            return None
        self.hits += 1
        return [line for line in path.read_text().splitlines() if line.strip()]

    def put(self, key: str, lines: list[str]) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(self._path(key))


_active = DiskCache(os.environ.get("QPLAB_CACHE_DIR"))


def active_cache() -> DiskCache:
    return _active


def set_cache_dir(directory: str | os.PathLike | None) -> DiskCache:
    """Point the process-wide cache at a directory (None disables disk use)."""
    global _active
    _active = DiskCache(directory)
    return _active
