"""Brute-force oracles written independently of the package search code.

The rectangulation oracle works on Python sets of cells instead of bitmasks; the 1D and
2D variation oracles enumerate every sub-dissection directly.
"""

from itertools import combinations

import numpy as np
from rich.console import Console

from rectvar.geometry import count_rect_partitions, enumerate_rect_partitions
from rectvar.gridfunc import GridFunction
from rectvar.report import InequalityReport, check_close, check_le
from rectvar.variation import pvar_1d
from suites.common import Tally, random_path, rng_for, tag

console = Console(stderr=True)
# Global quiet flag
_quiet = False

# Rectangulation counts of small cell grids
KNOWN_COUNTS = {(1, 1): 1, (1, 2): 2, (2, 2): 8, (2, 3): 34, (3, 3): 322, (4, 4): 70878}
ORACLE_EXPONENTS = (1.0, 1.5, 2.0, 3.0)
MAX_ORACLE_PATH = 12


def rect_partitions_oracle(nx: int, ny: int) -> set[tuple[tuple[float, float, float, float], ...]]:
    """Every rectangulation of the nx × ny cell grid as a canonical tuple of (a, b, c, d)."""
    out = set()

    def cover(uncovered: frozenset, placed: tuple) -> None:
        if not uncovered:
            out.add(tuple(sorted(placed)))
            return
        j, i = min((j, i) for i, j in uncovered)
        for i1 in range(i + 1, nx + 1):
            for j1 in range(j + 1, ny + 1):
                cells = {(ii, jj) for ii in range(i, i1) for jj in range(j, j1)}
                if cells <= uncovered:
                    rect = (float(i), float(i1), float(j), float(j1))
                    cover(uncovered - cells, placed + (rect,))

    cover(frozenset((i, j) for i in range(nx) for j in range(ny)), ())
    return out


def pvar_1d_oracle(path, p: float) -> float:
    """max over all index sub-dissections of Σ |x_{k_i} - x_{k_{i-1}}|^p."""
    x = np.asarray(path, dtype=float)
    n = len(x)
    best = 0.0
    for r in range(n - 1):
        for inner in combinations(range(1, n - 1), r):
            chain = (0, *inner, n - 1)
            best = max(best, sum(abs(x[b] - x[a]) ** p for a, b in zip(chain, chain[1:])))
    return best


def vp_2d_oracle(f: GridFunction, p: float) -> float:
    """max over all pairs of grid sub-dissections of the double sum of |f(A)|^p."""
    n, m = f.shape
    v = f.values
    best = 0.0
    for r in range(n - 1):
        for rows_inner in combinations(range(1, n - 1), r):
            rows = (0, *rows_inner, n - 1)
            for c in range(m - 1):
                for cols_inner in combinations(range(1, m - 1), c):
                    cols = (0, *cols_inner, m - 1)
                    total = 0.0
                    for i0, i1 in zip(rows, rows[1:]):
                        for j0, j1 in zip(cols, cols[1:]):
                            total += abs(v[i1, j1] - v[i0, j1] - v[i1, j0] + v[i0, j0]) ** p
                    best = max(best, total)
    return best


def oracle_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """Enumerator against the set-based oracle; 1D DP against exhaustive enumeration."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("oracles")
    for nx in range(1, 4):
        for ny in range(1, 4):
            listed = [part.canonical() for part in enumerate_rect_partitions(nx, ny)]
            fast = set(listed)
            slow = rect_partitions_oracle(nx, ny)
            report.add(check_close(
                f"{nx}x{ny}: enumerated partitions are distinct",
                len(listed),
                len(fast),
                witness={"nx": nx, "ny": ny},
            ))
            report.add(check_le(
                f"{nx}x{ny}: partitions missing from either side <= 0",
                len(fast ^ slow),
                0,
                witness={"enumerated": len(fast), "oracle": len(slow)},
            ))
    for (nx, ny), expected in sorted(KNOWN_COUNTS.items()):
        report.add(check_close(
            f"{nx}x{ny}: rectangulation count = {expected}",
            count_rect_partitions(nx, ny),
            expected,
            witness={"nx": nx, "ny": ny},
        ))
    if not _quiet: console.print("[green]✓ rectangulation enumerator matches oracle[/green]")

    tally = Tally("1D DP = exhaustive")
    for k in range(25 if quick else 500):
        rng = rng_for(seed, "pvar1d", k)
        n = int(rng.integers(2, MAX_ORACLE_PATH + 1))
        p = float(rng.choice(ORACLE_EXPONENTS))
        path = random_path(rng, n)
        tally.add(tag(check_close(
            f"p={p:g}: DP p-variation = exhaustive",
            pvar_1d(path, p).power_sum,
            pvar_1d_oracle(path, p),
            rel=1e-12,
            witness={"path": path},
        ), f"path#{k}"))
    if not _quiet: console.print(f"[green]✓ {tally.count} paths match exhaustive search[/green]")
    return tally.into(report)
