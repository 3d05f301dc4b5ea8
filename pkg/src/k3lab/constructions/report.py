"""Machine-checkable reports for the construction pipelines.

A report records the field, the seed, every check with its expected and
observed value, the defining ideals, and one sample member per pencil.
It is self-contained: verify_report re-runs the named pipeline from the
stored seed and compares the two reports key by key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import K3labError, SeedMismatch
from ..exactlin import FiniteField

SCHEMA = "k3lab/1"


def jsonable(value):
    """Recursively convert numpy scalars and arrays to plain Python."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    return value


def canonical_json(obj) -> str:
    """Stable byte-for-byte serialization (sorted keys, tight separators)."""
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class ConstructionReport:
    """Outcome of one pipeline run; PASS only if every check passed."""

    kind: str
    genus: int
    field: FiniteField
    seed: int
    status: str
    checks: tuple
    ideals: dict
    pencils: tuple
    notes: dict

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    @property
    def pencil_count(self) -> int:
        return len(self.pencils)

    def to_dict(self) -> dict:
        return jsonable({
            "schema": SCHEMA,
            "kind": self.kind,
            "genus": self.genus,
            "field": {"p": self.field.p, "k": self.field.k},
            "seed": self.seed,
            "status": self.status,
            "pencil_count": len(self.pencils),
            "checks": list(self.checks),
            "ideals": self.ideals,
            "pencils": list(self.pencils),
            "notes": self.notes,
        })

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


class ReportBuilder:
    """Accumulates checks for one pipeline attempt."""

    def __init__(self, kind: str, genus: int, field: FiniteField, seed: int):
        self.kind = kind
        self.genus = genus
        self.field = field
        self.seed = seed
        self.checks = []
        self.ideals = {}
        self.pencils = []
        self.notes = {}

    def check(self, name: str, expected, got) -> bool:
        expected = jsonable(expected)
        got = jsonable(got)
        ok = expected == got
        self.checks.append({
            "name": name,
            "expected": expected,
            "got": got,
            "status": "PASS" if ok else "FAIL",
        })
        return ok

    def require(self, name: str, expected, got, error: Exception):
        """Record the check and raise `error` when it fails."""
        if not self.check(name, expected, got):
            raise error

    def note(self, key: str, value):
        self.notes[key] = jsonable(value)

    def pencil(self, dual_point, member_sample, degree: int):
        self.pencils.append({
            "dual_point": jsonable(dual_point),
            "member_sample": jsonable(member_sample),
            "degree": degree,
        })

    def build(self) -> ConstructionReport:
        ok = all(c["status"] == "PASS" for c in self.checks)
        return ConstructionReport(
            kind=self.kind, genus=self.genus, field=self.field,
            seed=self.seed, status="PASS" if ok else "FAIL",
            checks=tuple(self.checks), ideals=dict(self.ideals),
            pencils=tuple(self.pencils), notes=dict(self.notes))


def _report_dict(report) -> dict:
    if isinstance(report, ConstructionReport):
        return report.to_dict()
    if isinstance(report, str):
        return json.loads(report)
    if isinstance(report, dict):
        return report
    raise K3labError(f"not a report: {type(report).__name__}")


def verify_report(report, field: FiniteField = None, cfg=None) -> bool:
    """Replay a report from its stored seed and compare the outcome.

    Returns True iff the rebuilt report is identical (same checks, same
    values, same PASS status).  A `field` argument, when given, must
    agree with the field stored in the report; a conflict raises
    SeedMismatch instead of silently replaying on the wrong field.
    """
    from . import _builder_for_kind
    from ..config import DEFAULT

    stored = _report_dict(report)
    try:
        kind = stored["kind"]
        fdesc = stored["field"]
        seed = int(stored["seed"])
        replay_field = FiniteField(int(fdesc["p"]), int(fdesc.get("k", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        raise K3labError(f"malformed report: {exc}") from exc
    if field is not None and (field.p != replay_field.p
                              or field.k != replay_field.k):
        raise SeedMismatch(
            f"report was produced over F_{replay_field.q}, "
            f"replay requested over F_{field.q}")
    builder = _builder_for_kind(kind, stored)
    fresh = builder(replay_field, seed, cfg if cfg is not None else DEFAULT)
    return canonical_json(fresh.to_dict()) == canonical_json(stored)
