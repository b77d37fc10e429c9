"""Randomized checks of the variation comparison, the sandwich bound, controls and the dual step function."""

from rich.console import Console

from rectvar.controls import check_superadditive, control_from_cpvar
from rectvar.gridfunc import GridFunction
from rectvar.report import InequalityReport, check_close, check_le
from rectvar.variation import controlled_pvar_exact, strict_gap_instance, verify_sandwich, vp_2d_exact
from rectvar.young import crucial_lemma_check
from suites.common import Tally, random_grid, random_partition, rng_for, tag

console = Console(stderr=True)
# Global quiet flag
_quiet = False

CORPUS_SHAPES = ((3, 3), (4, 3))
ORDERING_EXPONENTS = (1.5, 2.0, 3.0)
SANDWICH_CASES = ((1.2, 0.3), (1.2, 1.0), (2.0, 0.3), (2.0, 1.0))
CONTROL_EXPONENTS = (1.0, 2.0)
DUAL_EXPONENTS = (1.5, 2.0, 3.0)


def corpus(seed: int, quick: bool = False) -> list[tuple[str, GridFunction]]:
    """Grid-native functions on 3×3 and 4×3 cell grids, 100 of each (5 when quick)."""
    per_shape = 5 if quick else 100
    out = []
    for nx, ny in CORPUS_SHAPES:
        for k in range(per_shape):
            label = f"{nx}x{ny}#{k}"
            out.append((label, random_grid(rng_for(seed, "corpus", label), nx, ny)))
    return out


def equality_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """|f|_1-var = V_1(f) on every corpus function."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("p = 1 equality")
    tally = Tally("V_1 = |f|_1-var")
    for label, f in corpus(seed, quick):
        vp = vp_2d_exact(f, 1.0)
        cp = controlled_pvar_exact(f, 1.0)
        tally.add(tag(check_close(
            "V_1 = |f|_1-var",
            vp.value,
            cp.value,
            witness={"dx": vp.witness[0], "dy": vp.witness[1], "partition": cp.witness},
        ), label))
    if not _quiet: console.print(f"[green]✓ {tally.count} equality checks[/green]")
    return tally.into(report)


def ordering_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """V_p <= |f|_p-var for p in {1.5, 2, 3}; records the first strict gap found."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("ordering")
    tally = Tally("V_p <= |f|_p-var")
    gap = None
    searched = 0
    for label, f in corpus(seed, quick):
        searched += 1
        for p in ORDERING_EXPONENTS:
            vp = vp_2d_exact(f, p)
            cp = controlled_pvar_exact(f, p)
            tally.add(tag(check_le(
                f"V_{p:g} <= |f|_{p:g}-var",
                vp.value,
                cp.value,
                witness={"dx": vp.witness[0], "dy": vp.witness[1], "partition": cp.witness},
            ), label))
            if gap is None:
                found = strict_gap_instance(f, p)
                if found is not None:
                    gap = (label, p, *found)
    tally.into(report)

    if gap is None:
        report.add(check_le(
            "strict-gap instances found >= 1",
            1.0,
            0.0,
            witness={"seed": seed, "instances": searched, "exponents": list(ORDERING_EXPONENTS)},
        ))
        return report
    label, p, vp, cp = gap
    report.add(check_le(
        "strict-gap instances found >= 1",
        1.0,
        1.0,
        witness={"seed": seed, "instance": label, "p": p},
    ))
    report.add(check_le(
        f"strict gap: V_{p:g} < |f|_{p:g}-var",
        vp.value,
        cp.value,
        witness={
            "instance": label,
            "dx": vp.witness[0],
            "dy": vp.witness[1],
            "partition": cp.witness,
            "gridlike": cp.witness.is_gridlike(),
        },
        note="controlled witness is not grid-like",
    ))
    if not _quiet: console.print(f"[green]✓ strict gap on {label} at p={p:g}[/green]")
    return report


def sandwich_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """(1/c)|f|_(p+eps)-var <= V_p <= |f|_p-var over the corpus."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("sandwich")
    tally = Tally("sandwich")
    for label, f in corpus(seed, quick):
        for p, eps in SANDWICH_CASES:
            tally.add_all(verify_sandwich(f, p, eps), f"{label} p={p:g} eps={eps:g}")
    if not _quiet: console.print(f"[green]✓ {tally.count} sandwich checks[/green]")
    return tally.into(report)


def control_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """R ↦ |f|_{p-var;R}^p is super-additive over every rectangulation (3×3 cells)."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("controlled variation is a control")
    tally = Tally("super-additivity")
    for k in range(3 if quick else 50):
        label = f"3x3#{k}"
        f = random_grid(rng_for(seed, "control", label), 3, 3)
        for p in CONTROL_EXPONENTS:
            tally.add_all(check_superadditive(control_from_cpvar(f, p)), f"{label} p={p:g}")
    if not _quiet: console.print(f"[green]✓ {tally.count} super-additivity records[/green]")
    return tally.into(report)


def crucial_lemma_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """V_p'(y) <= |y|_p'-var <= 4 (Σ|x(Q_j)|^p)^(1/p') for random x, partitions q and p."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("dual step function")
    tally = Tally("dual step function")
    for k in range(5 if quick else 100):
        rng = rng_for(seed, "dual", k)
        nx, ny = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        p = float(rng.choice(DUAL_EXPONENTS))
        x = random_grid(rng, nx, ny)
        q = random_partition(rng, nx, ny)
        tally.add_all(crucial_lemma_check(x, q, p), f"{nx}x{ny}#{k} p={p:g}")
    if not _quiet: console.print(f"[green]✓ {tally.count} dual step function checks[/green]")
    return tally.into(report)
