"""Candidate 2D controls on a finite grid.

A control here is checked in the finite-grid sense only: super-additive over every
rectangulation (not just grid-like ones), zero on degenerate rectangles, and dominating
|f(R)|^p. Continuity has no finite-grid counterpart and is not checked.
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import pandas as pd

from rectvar import config
from rectvar.errors import CapExceededError, GridError, PreconditionError
from rectvar.geometry import (
    Dissection,
    GridIndexRect,
    Rect,
    RectPartition,
    best_rectangulation,
    grid_subrects,
)
from rectvar.gridfunc import GridFunction
from rectvar.report import CheckRecord, InequalityReport, check_le
from rectvar.variation import controlled_pvar_exact

FINITE_GRID_NOTE = "control (finite-grid sense): super-additivity, degeneracy, domination"


@dataclass(frozen=True, eq=False)
class ControlTable:
    """Dense table ω(R) >= 0 over every grid-aligned rectangle of a base grid.

    Degenerate rectangles are not stored; they read as 0.
    """

    xs: Dissection
    ys: Dissection
    entries: dict[GridIndexRect, float]

    def __post_init__(self):
        expected = set(grid_subrects(len(self.xs), len(self.ys)))
        if set(self.entries) != expected:
            raise GridError("control table must have an entry for every grid rectangle")
        for g, v in self.entries.items():
            if not np.isfinite(v) or v < 0:
                raise GridError(f"control entries must be finite and >= 0, got {v} at {g}")

    @classmethod
    def from_function(
        cls, xs: Dissection, ys: Dissection, func: Callable[[GridIndexRect], float]
    ) -> "ControlTable":
        entries = {g: float(func(g)) for g in grid_subrects(len(xs), len(ys))}
        return cls(xs, ys, entries)

    @property
    def cells(self) -> tuple[int, int]:
        return len(self.xs) - 1, len(self.ys) - 1

    def value(self, i0: int, i1: int, j0: int, j1: int) -> float:
        if i0 == i1 or j0 == j1:
            return 0.0
        return self.entries[GridIndexRect(i0, i1, j0, j1)]

    def __getitem__(self, key: GridIndexRect | Rect) -> float:
        if isinstance(key, Rect):
            return self.value(
                self.xs.index_of(key.a), self.xs.index_of(key.b),
                self.ys.index_of(key.c), self.ys.index_of(key.d),
            )
        return self.entries[key]

    def transpose(self) -> "ControlTable":
        return ControlTable(self.ys, self.xs, {g.transpose(): v for g, v in self.entries.items()})

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for g, v in sorted(self.entries.items()):
            r = g.to_rect(self.xs, self.ys)
            rows.append({"a": r.a, "b": r.b, "c": r.c, "d": r.d, "omega": v})
        return pd.DataFrame(rows, columns=["a", "b", "c", "d", "omega"])


def control_from_cpvar(f: GridFunction, p: float, cap: int | None = None) -> ControlTable:
    """ω(R) = |f|_{p-var;R}^p for every grid-aligned R."""
    return ControlTable.from_function(
        f.xs, f.ys, lambda g: controlled_pvar_exact(f, p, f.to_rect(g), cap).power_sum
    )


def _keep_worst(report: InequalityReport, worst: CheckRecord | None) -> InequalityReport:
    if worst is not None and all(worst is not r for r in report.records):
        report.add(worst)
    return report


def check_superadditive(w: ControlTable, cap: int | None = None) -> InequalityReport:
    """Check Σ ω(R_i) <= ω(R) for every grid rectangle R and every rectangulation of R.

    The largest partition sum per R is found by the memoized rectangulation search; every
    violating R is recorded with its maximizing partition, plus the smallest slack overall.
    """
    limit = config.get_partition_cap() if cap is None else cap
    nx, ny = w.cells
    if nx * ny > limit:
        raise CapExceededError("super-additivity check", nx * ny, limit)

    report = InequalityReport("super-additivity", notes=[FINITE_GRID_NOTE])
    worst = None
    for g in sorted(w.entries):
        best, rects = best_rectangulation(
            g.i1 - g.i0,
            g.j1 - g.j0,
            lambda q, g=g: w.entries[q.shifted(g.i0, g.j0)],
            limit,
        )
        target = g.to_rect(w.xs, w.ys)
        partition = RectPartition(
            tuple(q.shifted(g.i0, g.j0).to_rect(w.xs, w.ys) for q in rects), target
        )
        record = check_le(
            f"sum of omega over a partition of {target.as_list()} <= omega(R)",
            best,
            w.entries[g],
            witness={"rect": target, "partition": partition},
        )
        if not record.holds:
            report.add(record)
        if worst is None or record.slack < worst.slack:
            worst = record
    return _keep_worst(report, worst)


def dominates_increments(w: ControlTable, f: GridFunction, p: float) -> InequalityReport:
    """Check |f(R)|^p <= ω(R) for every grid-aligned R."""
    if w.xs != f.xs or w.ys != f.ys:
        raise GridError("control table and function must share the base grid")
    report = InequalityReport("domination", notes=[FINITE_GRID_NOTE])
    worst = None
    for g in sorted(w.entries):
        record = check_le(
            f"|f(R)|^p <= omega(R) on {f.to_rect(g).as_list()}",
            abs(f.increment(g)) ** p,
            w.entries[g],
            witness={"rect": f.to_rect(g)},
        )
        if not record.holds:
            report.add(record)
        if worst is None or record.slack < worst.slack:
            worst = record
    return _keep_worst(report, worst)


def _almost_subadd_record(
    w: ControlTable, i0: int, i1: int, js: int, jt: int, ju: int, p: float, label: str = ""
) -> CheckRecord:
    whole = w.value(i0, i1, js, ju)
    lower = w.value(i0, i1, js, jt)
    upper = w.value(i0, i1, jt, ju)
    extra = p * 2 ** (p - 1) * whole ** (1 - 1 / p) * min(lower, upper) ** (1 / p)
    a, b = w.xs[i0], w.xs[i1]
    s, t, u = w.ys[js], w.ys[jt], w.ys[ju]
    return check_le(
        f"omega([{a:g},{b:g}]x[{s:g},{u:g}]) split at {t:g}{label}",
        whole,
        lower + upper + extra,
        constant=p * 2 ** (p - 1),
        witness={"a": a, "b": b, "s": s, "t": t, "u": u},
    )


def almost_subadd_check(
    w: ControlTable, a: float, b: float, s: float, t: float, u: float, p: float
) -> InequalityReport:
    """Check the almost-subadditivity of ω across the horizontal line at height t.

    ω([a,b]×[s,u]) <= ω([a,b]×[s,t]) + ω([a,b]×[t,u])
                      + p 2^{p-1} ω([a,b]×[s,u])^{1-1/p} min(ω(upper), ω(lower))^{1/p}
    """
    i0, i1 = w.xs.index_of(a), w.xs.index_of(b)
    js, jt, ju = w.ys.index_of(s), w.ys.index_of(t), w.ys.index_of(u)
    if not (i0 < i1 and js < jt < ju):
        raise PreconditionError("need a < b and s < t < u")
    report = InequalityReport("almost-subadditivity")
    report.add(_almost_subadd_record(w, i0, i1, js, jt, ju, p))
    return report


def almost_subadd_sweep(w: ControlTable, p: float) -> InequalityReport:
    """almost_subadd_check at every grid (a, b, s, t, u), splitting along both axes."""
    report = InequalityReport("almost-subadditivity")
    worst = None
    for table, label in ((w, ""), (w.transpose(), " (transposed)")):
        n, m = len(table.xs), len(table.ys)
        for i0 in range(n - 1):
            for i1 in range(i0 + 1, n):
                for js in range(m - 2):
                    for jt in range(js + 1, m - 1):
                        for ju in range(jt + 1, m):
                            record = _almost_subadd_record(table, i0, i1, js, jt, ju, p, label)
                            if not record.holds:
                                report.add(record)
                            if worst is None or record.slack < worst.slack:
                                worst = record
    return _keep_worst(report, worst)
