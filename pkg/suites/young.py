"""Randomized checks of the one- and two-parameter Young maximal inequalities."""

from rich.console import Console

from rectvar.report import InequalityReport
from rectvar.young import ExponentTriple, optimal_alpha, verify_young_1d, verify_yt_2d
from suites.common import Tally, derive_seed, random_path, random_zeroed_grid, rng_for

console = Console(stderr=True)
# Global quiet flag
_quiet = False

THETAS_1D = (1.2, 4 / 3, 1.9)
THETAS_2D = (1.2, 1.5)
MAX_PATH_POINTS = 10
MAX_GRID_CELLS = 4


def young_1d_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """Random path pairs with y_0 = 0, all sub-dissections, full removal cascade."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("young 1d")
    tally = Tally("young 1d")
    exponents = [ExponentTriple.symmetric(theta) for theta in THETAS_1D]
    for k in range(20 if quick else 500):
        rng = rng_for(seed, "young1d", k)
        n = int(rng.integers(2, MAX_PATH_POINTS + 1))
        x = random_path(rng, n)
        y = random_path(rng, n, start_zero=True)
        for e in exponents:
            tally.add_all(
                verify_young_1d(y, x, e, seed=derive_seed(seed, "young1d-masks", k)),
                f"path#{k} n={n} theta={e.theta:.6g}",
            )
    if not _quiet: console.print(f"[green]✓ {tally.count} one-parameter Young checks[/green]")
    return tally.into(report)


def young_2d_suite(seed: int, quick: bool = False, quiet: bool = False) -> InequalityReport:
    """Random axis-zeroed grid pairs up to 5×5 points, α at its optimum."""
    global _quiet
    _quiet = quiet

    report = InequalityReport("young-towghi 2d")
    tally = Tally("young-towghi 2d")
    exponents = []
    for theta in THETAS_2D:
        e = ExponentTriple.symmetric(theta)
        exponents.append(e.with_alpha(optimal_alpha(e.theta)))
    for k in range(5 if quick else 100):
        rng = rng_for(seed, "young2d", k)
        nx = int(rng.integers(1, MAX_GRID_CELLS + 1))
        ny = int(rng.integers(1, MAX_GRID_CELLS + 1))
        x = random_zeroed_grid(rng, nx, ny)
        y = random_zeroed_grid(rng, nx, ny)
        for e in exponents:
            tally.add_all(
                verify_yt_2d(y, x, e, seed=derive_seed(seed, "young2d-pairs", k)),
                f"{nx}x{ny}#{k} theta={e.theta:.6g} alpha={e.alpha:.6g}",
            )
    if not _quiet: console.print(f"[green]✓ {tally.count} two-parameter Young checks[/green]")
    return tally.into(report)
