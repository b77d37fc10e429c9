"""Fractional Brownian motion covariance as a two-parameter function.

C^H(s,t) = ½(t^{2H} + s^{2H} - |t-s|^{2H}) for H in (0, 1/2]. Its rectangular increment
over [a,b]×[c,d] is the covariance of the increments β_{a,b} and β_{c,d}.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from rectvar import config
from rectvar.errors import DomainError
from rectvar.geometry import Dissection, Rect, RectPartition
from rectvar.gridfunc import GridFunction, rect_increment
from rectvar.report import InequalityReport, check_close, check_le
from rectvar.schemas import scan_table
from rectvar.variation import vp_2d_alternating, vp_2d_exact


@dataclass(frozen=True)
class HurstKernel:
    """fBM covariance kernel with Hurst parameter 0 < H <= 1/2."""

    H: float

    def __post_init__(self):
        if not 0 < self.H <= 0.5:
            raise DomainError(f"Hurst parameter must lie in (0, 1/2], got {self.H}")

    @property
    def exponent(self) -> float:
        """Variation exponent 1/(2H)."""
        return 1.0 / (2.0 * self.H)

    @property
    def is_brownian(self) -> bool:
        return self.H == 0.5

    def __call__(self, s, t):
        s, t = np.asarray(s, dtype=float), np.asarray(t, dtype=float)
        if np.any(s < 0) or np.any(t < 0):
            raise DomainError("fBM covariance is defined for nonnegative times only")
        two_h = 2.0 * self.H
        return 0.5 * (t ** two_h + s ** two_h - np.abs(t - s) ** two_h)


def fbm_cov(k: HurstKernel, s: float, t: float) -> float:
    """E(β_s β_t) = ½(t^{2H} + s^{2H} - |t-s|^{2H})."""
    return float(k(s, t))


def fbm_rect_cov(k: HurstKernel, r: Rect) -> float:
    """E(β_{a,b} β_{c,d}) = ½(|d-a|^{2H} + |c-b|^{2H} - |d-b|^{2H} - |c-a|^{2H})."""
    if min(r.a, r.c) < 0:
        raise DomainError("fBM covariance is defined for nonnegative times only")
    two_h = 2.0 * k.H
    return 0.5 * (
        abs(r.d - r.a) ** two_h + abs(r.c - r.b) ** two_h
        - abs(r.d - r.b) ** two_h - abs(r.c - r.a) ** two_h
    )


def covariance_grid(k: HurstKernel, xs: Dissection, ys: Dissection | None = None) -> GridFunction:
    """C^H sampled on xs × ys (default: xs × xs)."""
    return GridFunction.sample(k, xs, xs if ys is None else ys)


def scaling_check(k: HurstKernel, r: Rect, factor: float) -> InequalityReport:
    """C^H(λr) = λ^{2H} C^H(r), plus closed form against the sampled four-corner increment."""
    report = InequalityReport("fbm-scaling")
    report.add(check_close(
        f"C^H({factor:g} r) = {factor:g}^(2H) C^H(r)",
        fbm_rect_cov(k, r.scaled(factor)),
        factor ** (2 * k.H) * fbm_rect_cov(k, r),
        rel=1e-12,
        witness={"rect": r, "factor": factor},
    ))
    if not r.is_degenerate:
        xs = Dissection((r.a, r.b))
        ys = Dissection((r.c, r.d))
        report.add(check_close(
            "closed form = sampled four-corner increment",
            fbm_rect_cov(k, r),
            rect_increment(covariance_grid(k, xs, ys), r),
            rel=1e-12,
            witness={"rect": r},
        ))
    return report


def neg_correlation_check(k: HurstKernel, grid: Dissection) -> InequalityReport:
    """Check E(β_{a,b} β_{c,d}) <= 0 for all grid intervals with b <= c.

    For H = 1/2 every such covariance is exactly 0 and the check passes trivially.
    """
    report = InequalityReport("negative-correlation")
    if k.is_brownian:
        report.notes.append("H = 1/2: disjoint increments are uncorrelated (degenerate pass)")
    pts = grid.points
    n = len(pts)
    worst_value, worst_rect, count = float("-inf"), None, 0
    for i0 in range(n - 1):
        for i1 in range(i0 + 1, n):
            for j0 in range(i1, n - 1):
                for j1 in range(j0 + 1, n):
                    r = Rect(pts[i0], pts[i1], pts[j0], pts[j1])
                    value = fbm_rect_cov(k, r)
                    count += 1
                    if value > worst_value:
                        worst_value, worst_rect = value, r
    if worst_rect is None:
        return report
    report.add(check_le(
        f"max covariance of disjoint increments <= 0 ({count} pairs)",
        worst_value,
        0.0,
        witness={"rect": worst_rect},
    ))
    return report


def fbm_variation_scan(
    k: HurstKernel,
    s: float,
    t: float,
    sizes: Sequence[int],
    cap: int | None = None,
) -> pd.DataFrame:
    """V_{1/(2H)}(C^H; [s,t]²) on uniform n×n grids, with the ratio to |t-s|^{2H}.

    Exact while the grid fits the exact cap, coordinate ascent beyond it. The empirical
    c_H is the largest ratio.

    Returns:
        DataFrame with columns n, p, value, ratio, method, bound
    """
    if not 0 <= s < t:
        raise DomainError(f"need 0 <= s < t, got s={s}, t={t}")
    limit = config.get_exact_cap() if cap is None else cap
    p = k.exponent
    rows = []
    for n in sizes:
        f = covariance_grid(k, Dissection.uniform(s, t, n))
        if n - 2 <= limit:
            result = vp_2d_exact(f, p, cap=limit)
        else:
            result = vp_2d_alternating(f, p)
        rows.append({
            "n": int(n),
            "p": p,
            "value": result.value,
            "ratio": result.value / (t - s) ** (2 * k.H),
            "method": result.method.value,
            "bound": result.bound,
        })
    frame = pd.DataFrame(rows, columns=["n", "p", "value", "ratio", "method", "bound"])
    return scan_table(frame).to_pandas()


def counterexample_partition() -> RectPartition:
    """[0,2]² = [0,1]² ∪ [1,2]² ∪ [0,1]×[1,2] ∪ [1,2]×[0,1]."""
    return RectPartition(
        (Rect(0, 1, 0, 1), Rect(1, 2, 1, 2), Rect(0, 1, 1, 2), Rect(1, 2, 0, 1)),
        Rect(0, 2, 0, 2),
    )


def superadditivity_counterexample(k: HurstKernel, n: int = 5) -> InequalityReport:
    """Test super-additivity of R ↦ V_p(C^H; R)^p, p = 1/(2H), on a four-piece partition.

    Uses a uniform grid of [0,2] with n points per unit interval. For H < 1/2 the sum over
    the pieces exceeds the whole (the check is expected to fail); for H = 1/2 the pieces
    add up exactly.
    """
    p = k.exponent
    f = covariance_grid(k, Dissection.uniform(0.0, 2.0, 2 * (n - 1) + 1))
    partition = counterexample_partition()
    pieces = [vp_2d_exact(f, p, r) for r in partition.rects]
    whole = vp_2d_exact(f, p)
    total = sum(res.power_sum for res in pieces)
    off_diagonal = partition.rects[2]

    report = InequalityReport("super-additivity counterexample")
    report.add(check_le(
        "sum of V_p^p over [0,1]^2, [1,2]^2, R, R' <= V_p^p([0,2]^2)",
        total,
        whole.power_sum,
        expect_hold=k.is_brownian,
        witness={
            "partition": partition,
            "pieces": [res.power_sum for res in pieces],
            "whole_dx": whole.witness[0],
            "whole_dy": whole.witness[1],
        },
        note="expected to fail for H < 1/2",
    ))
    report.add(check_le(
        "|C^H(R)| <= 0",
        abs(fbm_rect_cov(k, off_diagonal)),
        0.0,
        expect_hold=k.is_brownian,
        witness={"rect": off_diagonal},
        note="C^H([0,1]x[1,2]) = 2^(2H-1) - 1 vanishes only for H = 1/2",
    ))
    if k.is_brownian:
        report.add(check_close(
            "V_1 additive over the partition",
            total,
            whole.power_sum,
            rel=1e-9,
            witness={"partition": partition},
        ))
    return report
