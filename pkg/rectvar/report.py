"""Check records, inequality reports and the JSON run report."""

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import xxhash

from rectvar import config
from rectvar.geometry import Dissection, GridIndexRect, Rect, RectPartition


def to_jsonable(obj: Any) -> Any:
    """Convert witnesses and results into plain JSON values.

    Dissections become coordinate lists, partitions lists of [a, b, c, d].
    """
    if isinstance(obj, Dissection):
        return list(obj.points)
    if isinstance(obj, RectPartition):
        return {"target": obj.target.as_list(), "rects": obj.as_list()}
    if isinstance(obj, Rect):
        return obj.as_list()
    if isinstance(obj, GridIndexRect):
        return [obj.i0, obj.i1, obj.j0, obj.j1]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return value
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


@dataclass
class CheckRecord:
    """One tested inequality ``lhs <= rhs``.

    ``expect_hold`` is False for checks that are supposed to fail (counterexamples); the
    record is consistent when the outcome matches the expectation.
    """

    name: str
    lhs: float
    rhs: float
    holds: bool
    constant: float | None = None
    expect_hold: bool = True
    witness: Any = None
    note: str | None = None

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def consistent(self) -> bool:
        return self.holds == self.expect_hold

    def to_dict(self) -> dict:
        return to_jsonable({
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "constant": self.constant,
            "slack": self.slack,
            "pass": self.holds,
            "expect_pass": self.expect_hold,
            "consistent": self.consistent,
            "witness": self.witness,
            "note": self.note,
        })


def within(lhs: float, rhs: float, tol: float | None = None) -> bool:
    """lhs <= rhs up to a relative tolerance with an absolute floor."""
    if tol is None:
        tol = config.get_check_tolerance()
    return lhs <= rhs + tol * max(1.0, abs(lhs), abs(rhs))


def check_le(
    name: str,
    lhs: float,
    rhs: float,
    *,
    constant: float | None = None,
    witness: Any = None,
    expect_hold: bool = True,
    note: str | None = None,
    tol: float | None = None,
) -> CheckRecord:
    return CheckRecord(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        holds=within(lhs, rhs, tol),
        constant=constant,
        expect_hold=expect_hold,
        witness=witness,
        note=note,
    )


def check_close(
    name: str,
    lhs: float,
    rhs: float,
    *,
    rel: float = 1e-10,
    witness: Any = None,
    note: str | None = None,
) -> CheckRecord:
    """Equality check |lhs - rhs| <= rel · max(1, |lhs|, |rhs|), recorded as lhs vs rhs."""
    holds = abs(lhs - rhs) <= rel * max(1.0, abs(lhs), abs(rhs))
    return CheckRecord(name, float(lhs), float(rhs), holds, witness=witness, note=note)


@dataclass
class InequalityReport:
    """A named group of check records."""

    name: str
    records: list[CheckRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def extend(self, other: "InequalityReport", prefix: str | None = None) -> None:
        for rec in other.records:
            if prefix:
                rec.name = f"{prefix}: {rec.name}"
            self.records.append(rec)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.records)

    @property
    def consistent(self) -> bool:
        return all(r.consistent for r in self.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.holds]

    @property
    def worst(self) -> CheckRecord | None:
        if not self.records:
            return None
        return min(self.records, key=lambda r: r.slack)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "consistent": self.consistent,
            "notes": list(self.notes),
            "records": [r.to_dict() for r in self.records],
        }


@dataclass
class Report:
    """Everything a CLI run produces. ``timing`` is the only nondeterministic part."""

    command: str
    config: dict
    checks: list[InequalityReport] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    schema_hashes: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(c.consistent for c in self.checks)

    def to_dict(self, include_timing: bool = True) -> dict:
        data = {
            "command": self.command,
            "config": to_jsonable(self.config),
            "consistent": self.consistent,
            "checks": [c.to_dict() for c in self.checks],
            "results": to_jsonable(self.results),
            "schema_hashes": dict(self.schema_hashes),
        }
        if include_timing:
            data["timing"] = to_jsonable(self.timing)
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def digest(self) -> str:
        """xxh64 of the report without timing, for determinism checks."""
        return xxhash.xxh64(self.to_json(include_timing=False).encode("utf-8")).hexdigest()
