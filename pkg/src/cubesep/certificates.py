"""Certificate envelopes: payload + run manifest + content digest.

Every CLI artifact is wrapped as {"kind", "payload", "manifest", "digest"}.
The digest covers the kind, the payload and the stable manifest fields;
wall time and the creation timestamp are excluded, so identical runs with
the same seed produce byte-identical documents up to those two fields.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import platform
import sys
from datetime import datetime, timezone
from typing import Optional

from .config import Config

VOLATILE_MANIFEST_FIELDS = ("wall_time_s", "created_utc")

KIND_FREE_SET = "free_set"
KIND_GAUSSIAN_FREE_SET = "gaussian_free_set"
KIND_ARROW = "arrow"
KIND_VALUE = "value"
KIND_WITNESS_SET = "witness_set"
KIND_EXTENSION = "extension"
KIND_CHAIN = "chain"
KIND_GRID = "grid_report"
KIND_AUERBACH = "auerbach"
KIND_FAMILY = "separated_family"
KIND_SELFTEST = "selftest_report"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def make_manifest(command: list[str], config: Config, seed: int,
                  wall_time_s: Optional[float] = None) -> dict:
    return {
        "command": list(command),
        "seed": seed,
        "config_digest": config.digest(),
        "budgets": dataclasses.asdict(config),
        "versions": {
            "cubesep": _package_version(),
            "python": platform.python_version(),
        },
        "wall_time_s": wall_time_s,
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }


def _package_version() -> str:
    from . import __version__
    return __version__


def stable_view(doc: dict) -> dict:
    manifest = {k: v for k, v in doc.get("manifest", {}).items()
                if k not in VOLATILE_MANIFEST_FIELDS}
    return {"kind": doc["kind"], "payload": doc["payload"], "manifest": manifest}


def compute_digest(doc: dict) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(stable_view(doc)).encode()).hexdigest()


def wrap(kind: str, payload: dict, manifest: dict) -> dict:
    doc = {"kind": kind, "payload": payload, "manifest": manifest}
    doc["digest"] = compute_digest(doc)
    return doc


def digest_ok(doc: dict) -> bool:
    return doc.get("digest") == compute_digest(doc)


def dump(doc: dict, path: Optional[str] = None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2)
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
