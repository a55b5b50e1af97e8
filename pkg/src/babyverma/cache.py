"""On-disk JSON cache for character tables and K(t,t) matrices, keyed by (n, format version)."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

from .cherepoly import install_km_table, km_tt
from .exactalg import LaurentPoly
from .symcomb import CharacterTable, Partition, character_table, install_character_table, partitions

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
ENV_VAR = "BABYVERMA_CACHE_DIR"


def resolve_dir(explicit: Optional[str]) -> Optional[Path]:
    raw = explicit or os.environ.get(ENV_VAR)
    return Path(raw).expanduser() if raw else None


class DiskCache:
    def __init__(self, root: Path):
        self.root = Path(root)

    def path(self, kind: str, n: int) -> Path:
        return self.root / f"{kind}-n{n}-v{FORMAT_VERSION}.json"

    def _read(self, kind: str, n: int):
        p = self.path(kind, n)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            log.warning("ignoring unreadable cache file %s", p)
            return None
        if data.get("version") != FORMAT_VERSION or data.get("n") != n:
            return None
        return data["payload"]

    def _write(self, kind: str, n: int, payload) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        body = json.dumps({"version": FORMAT_VERSION, "n": n, "payload": payload}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(body)
        os.replace(tmp, self.path(kind, n))

    def character_table(self, n: int) -> CharacterTable:
        payload = self._read("chartable", n)
        if payload is not None:
            table = CharacterTable.from_json(payload)
        else:
            table = character_table(n)
            self._write("chartable", n, table.to_json())
        install_character_table(table)
        return table

    def km_table(self, n: int) -> dict:
        payload = self._read("kmtt", n)
        if payload is not None:
            table = {
                (Partition(mu), Partition(lam)): LaurentPoly.from_json(poly)
                for mu, lam, poly in payload
            }
        else:
            table = {(mu, lam): km_tt(mu, lam) for lam in partitions(n) for mu in partitions(n)}
            self._write("kmtt", n, [[list(mu), list(lam), p.to_json()] for (mu, lam), p in table.items()])
        install_km_table(n, table)
        return table

    def warm(self, n: int) -> None:
        self.character_table(n)
        self.km_table(n)
