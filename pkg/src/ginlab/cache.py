"""Content-addressed on-disk cache for computed gins.

Entries are JSON files named by the SHA-256 of a canonical description of
the computation. Writes go to a temporary file that is then linked into
place, so readers never observe a partial entry and the first writer wins.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional, Sequence, Tuple

from . import __version__
from .gin import GinCertificate
from .poly import Polynomial
from .staircase import MonomialIdeal

ENV_VAR = "GINLAB_CACHE"
DEFAULT_DIR = ".ginlab-cache"


def cache_key(gens: Sequence[Polynomial], n: int, seed: int, height: int, version: str = __version__) -> str:
    ring = gens[0].ring
    payload = {
        "ring": str(ring),
        "generators": [str(g) for g in gens],
        "n": n,
        "seed": seed,
        "height": height,
        "field": ring.field.name,
        "version": version,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class GinCache:
    def __init__(self, root: Optional[os.PathLike] = None):
        self.root = Path(root if root is not None else os.environ.get(ENV_VAR, DEFAULT_DIR))

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def cache_get(self, key: str) -> Optional[dict]:
        path = self._path(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        return json.loads(text)

    def cache_put(self, key: str, value: dict) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.exists():
            return
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(value, fh, sort_keys=True)
                fh.flush()
                os.fsync(fh.fileno())
            try:
                os.link(tmp, path)
            except FileExistsError:
                pass
            except OSError:
                # filesystems without hard links
                os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    # adapter used by gin_sequence
    def get(self, gens, n, seed, height) -> Optional[Tuple[MonomialIdeal, GinCertificate]]:
        data = self.cache_get(cache_key(gens, n, seed, height))
        if data is None:
            return None
        return MonomialIdeal.from_json(data["ideal"]), GinCertificate.from_json(data["certificate"])

    def put(self, gens, n, seed, height, ideal: MonomialIdeal, cert: GinCertificate) -> None:
        self.cache_put(
            cache_key(gens, n, seed, height),
            {"ideal": ideal.to_json(), "certificate": cert.to_json()},
        )
