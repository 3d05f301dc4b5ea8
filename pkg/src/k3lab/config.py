"""Runtime configuration: enumeration caps, retry budget, thread count.

A Config travels explicitly through the construction pipelines so that a
report can be replayed byte-for-byte.  Thread count never changes results,
only wall time; chunked scans merge in deterministic order.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace


def _default_threads() -> int:
    env = os.environ.get("K3LAB_THREADS")
    if env:
        try:
            n = int(env)
            if n >= 1:
                return n
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


@dataclass(frozen=True)
class Config:
    default_field: tuple[int, int] = (13, 1)
    grassmann_cap: int = 2_000_000
    projective_cap: int = 3_000_000
    retry_bound: int = 50
    dmax: int = 6
    threads: int = field(default_factory=_default_threads)
    seed: int = 0
    output_path: str | None = None

    @classmethod
    def from_file(cls, path: str) -> "Config":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> "Config":
        cfg = cls()
        known = {}
        if "default_field" in raw:
            p, k = raw["default_field"]
            known["default_field"] = (int(p), int(k))
        for key in ("grassmann_cap", "projective_cap", "retry_bound", "dmax",
                    "threads", "seed"):
            if key in raw:
                known[key] = int(raw[key])
        if "output_path" in raw:
            known["output_path"] = raw["output_path"]
        return replace(cfg, **known)


DEFAULT = Config()
