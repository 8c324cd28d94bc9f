"""Shipped data catalogues: location, loading and checksum validation."""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any

ENV_VAR = "K3X_CATALOG"
SUMS = "SHA256SUMS"
CURVES = ("p1", "p2", "p3", "p4", "p5", "p6", "p7")


class CatalogError(Exception):
    """Missing or unreadable catalogue (an input error, not a failed check)."""


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


class Catalog:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_dir()
        if not self.root.is_dir():
            raise CatalogError(f"catalogue directory {self.root} does not exist")
        self._cache: dict[str, Any] = {}

    def path(self, name: str) -> Path:
        return self.root / (name if name.endswith(".json") else f"{name}.json")

    def load(self, name: str) -> Any:
        if name not in self._cache:
            p = self.path(name)
            try:
                with open(p, encoding="utf-8") as fh:
                    self._cache[name] = json.load(fh)
            except FileNotFoundError as exc:
                raise CatalogError(f"missing catalogue file {p.name}") from exc
            except json.JSONDecodeError as exc:
                raise CatalogError(f"malformed catalogue file {p.name}: {exc}") from exc
        return self._cache[name]

    def checksums(self) -> dict[str, str]:
        p = self.root / SUMS
        if not p.is_file():
            raise CatalogError(f"missing {SUMS} in {self.root}")
        out = {}
        for line in p.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            digest, _, name = line.partition("  ")
            if not name:
                raise CatalogError(f"malformed line in {SUMS}: {line!r}")
            out[name.strip()] = digest.strip()
        return out

    def integrity(self) -> dict:
        """Compare every listed file against its recorded digest."""
        bad, missing = [], []
        sums = self.checksums()
        for name, digest in sorted(sums.items()):
            p = self.root / name
            if not p.is_file():
                missing.append(name)
                continue
            if hashlib.sha256(p.read_bytes()).hexdigest() != digest:
                bad.append(name)
        unlisted = sorted(p.name for p in self.root.glob("*.json") if p.name not in sums)
        return {"files": len(sums), "mismatched": bad, "missing": missing, "unlisted": unlisted,
                "pass": not bad and not missing and not unlisted}


def write_checksums(root: str | os.PathLike) -> None:
    root = Path(root)
    lines = [f"{hashlib.sha256(p.read_bytes()).hexdigest()}  {p.name}"
             for p in sorted(root.glob("*.json"))]
    (root / SUMS).write_text("\n".join(lines) + "\n", encoding="utf-8")
