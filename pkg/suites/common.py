"""Seeded instance generators and the record tally shared by every suite."""

from dataclasses import dataclass, field

import numpy as np
import xxhash

from rectvar.geometry import RectPartition, enumerate_rect_partitions
from rectvar.gridfunc import GridFunction
from rectvar.report import CheckRecord, InequalityReport

# Inconsistent records kept per tally; the rest are only counted
MAX_KEPT_FAILURES = 20


def derive_seed(seed: int, *labels) -> int:
    """xxh64 of the root seed and labels, so each instance has its own stream."""
    key = ":".join(str(v) for v in (seed, *labels))
    return xxhash.xxh64_intdigest(key.encode("utf-8"))


def rng_for(seed: int, *labels) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *labels))


def random_grid(rng: np.random.Generator, nx: int, ny: int) -> GridFunction:
    """Grid-native function on the integer points of an nx × ny cell grid, values in [-1, 1]."""
    return GridFunction.on_integer_grid(rng.uniform(-1.0, 1.0, (nx + 1, ny + 1)))


def random_zeroed_grid(rng: np.random.Generator, nx: int, ny: int) -> GridFunction:
    values = rng.uniform(-1.0, 1.0, (nx + 1, ny + 1))
    values[0, :] = 0.0
    values[:, 0] = 0.0
    return GridFunction.on_integer_grid(values)


def random_path(rng: np.random.Generator, n: int, start_zero: bool = False) -> list[float]:
    path = rng.uniform(-1.0, 1.0, n)
    if start_zero:
        path[0] = 0.0
    return path.tolist()


def random_partition(rng: np.random.Generator, nx: int, ny: int) -> RectPartition:
    """Uniformly chosen rectangulation of the nx × ny unit-cell grid."""
    partitions = list(enumerate_rect_partitions(nx, ny))
    return partitions[int(rng.integers(len(partitions)))]


def tag(record: CheckRecord, instance: str) -> CheckRecord:
    """Attach the instance label to a record's witness."""
    if isinstance(record.witness, dict):
        record.witness = {"instance": instance, **record.witness}
    else:
        record.witness = {"instance": instance, "witness": record.witness}
    return record


@dataclass
class Tally:
    """Counts records; keeps the inconsistent ones and the tightest expected-to-hold one."""

    name: str
    count: int = 0
    inconsistent: int = 0
    kept: list[CheckRecord] = field(default_factory=list)
    worst: CheckRecord | None = None

    def add(self, record: CheckRecord) -> CheckRecord:
        self.count += 1
        if not record.consistent:
            self.inconsistent += 1
            if len(self.kept) < MAX_KEPT_FAILURES:
                self.kept.append(record)
        if record.expect_hold and (self.worst is None or record.slack < self.worst.slack):
            self.worst = record
        return record

    def add_all(self, report: InequalityReport, instance: str) -> None:
        for record in report.records:
            self.add(tag(record, instance))

    def into(self, report: InequalityReport) -> InequalityReport:
        for record in self.kept:
            report.add(record)
        if self.worst is not None and all(self.worst is not r for r in self.kept):
            report.add(self.worst)
        report.notes.append(f"{self.name}: {self.count} checks, {self.inconsistent} inconsistent")
        return report
