"""fBM covariance: closed form, negative correlation, variation scan and the counterexample."""

from rich.console import Console

from rectvar.fbm import (
    HurstKernel,
    fbm_rect_cov,
    fbm_variation_scan,
    neg_correlation_check,
    scaling_check,
    superadditivity_counterexample,
)
from rectvar.geometry import Dissection, Rect
from rectvar.report import InequalityReport, check_close, check_le

console = Console(stderr=True)
# Global quiet flag
_quiet = False

CLOSED_FORM_H = (0.25, 0.4, 0.5)
NEGATIVE_H = (0.1, 0.25, 0.4)
SCAN_H = 0.25
SCAN_SIZES = (8, 10)
SCAN_DRIFT = 0.10
SCAN_SCALE_MISMATCH = 0.01


def _relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def fbm_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """Deterministic; ``seed`` and ``quick`` are accepted for a uniform suite signature."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("fbm")
    off_diagonal = Rect(0.0, 1.0, 1.0, 2.0)
    for H in CLOSED_FORM_H:
        k = HurstKernel(H)
        report.add(check_close(
            f"H={H:g}: C^H([0,1]x[1,2]) = 2^(2H-1) - 1",
            fbm_rect_cov(k, off_diagonal),
            2 ** (2 * H - 1) - 1,
            rel=1e-12,
            witness={"rect": off_diagonal},
        ))
        report.extend(scaling_check(k, Rect(0.0, 1.0, 1.0, 2.0), 2.0), prefix=f"H={H:g}")

    grid = Dissection.uniform(0.0, 2.0, 9)
    for H in NEGATIVE_H:
        report.extend(neg_correlation_check(HurstKernel(H), grid), prefix=f"H={H:g}")
    if not _quiet: console.print("[green]✓ closed form and negative correlation[/green]")

    k = HurstKernel(SCAN_H)
    unit = fbm_variation_scan(k, 0.0, 1.0, SCAN_SIZES)
    double = fbm_variation_scan(k, 0.0, 2.0, SCAN_SIZES)
    first, last = unit["ratio"].iloc[0], unit["ratio"].iloc[-1]
    report.add(check_le(
        f"H={SCAN_H:g}: ratio drift between n={SCAN_SIZES[0]} and n={SCAN_SIZES[-1]} on [0,1]^2",
        _relative_gap(first, last),
        SCAN_DRIFT,
        witness={"scan": unit.to_dict(orient="records")},
    ))
    for (_, a), (_, b) in zip(unit.iterrows(), double.iterrows()):
        report.add(check_le(
            f"H={SCAN_H:g}: [0,1]^2 and [0,2]^2 ratios agree at n={int(a['n'])}",
            _relative_gap(a["ratio"], b["ratio"]),
            SCAN_SCALE_MISMATCH,
            witness={"unit": a.to_dict(), "double": b.to_dict()},
        ))
    report.notes.append(f"empirical c_H at H={SCAN_H:g}: {float(unit['ratio'].max())!r}")
    if not _quiet: console.print("[green]✓ variation scan[/green]")

    report.extend(superadditivity_counterexample(HurstKernel(0.25)), prefix="H=0.25")
    report.extend(superadditivity_counterexample(HurstKernel(0.5)), prefix="H=0.5")
    if not _quiet: console.print("[green]✓ super-additivity counterexample[/green]")
    return report
