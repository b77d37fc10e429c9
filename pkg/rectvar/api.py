"""Public Python API for rectvar.

Every CLI command is a :class:`RunConfig` handed to :func:`run`, which returns a
:class:`~rectvar.report.Report`.

Example usage:
    >>> import rectvar as rv
    >>> cfg = rv.RunConfig(command="vp", input_path="grid.csv", p=1.0)
    >>> report = rv.run(cfg)
    >>> report.consistent
    True
"""

import os
import time
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from rich.console import Console

from rectvar import config
from rectvar.controls import (
    almost_subadd_sweep,
    check_superadditive,
    control_from_cpvar,
    dominates_increments,
)
from rectvar.errors import ConfigError
from rectvar.fbm import (
    HurstKernel,
    covariance_grid,
    fbm_rect_cov,
    fbm_variation_scan,
    neg_correlation_check,
    scaling_check,
    superadditivity_counterexample,
)
from rectvar.geometry import (
    Dissection,
    Rect,
    count_rect_partitions,
    enumerate_rect_partitions,
    validate_partition,
)
from rectvar.gridfunc import GridFunction
from rectvar.gridio import load_grid_function, load_grid_pair, load_paths
from rectvar.report import InequalityReport, Report, check_close, check_le
from rectvar.schemas import get_all_schema_hashes
from rectvar.variation import (
    controlled_pvar_exact,
    sandwich_constant,
    verify_sandwich,
    vp_2d_alternating,
    vp_2d_exact,
    witness_objective,
)
from rectvar.young import (
    ExponentTriple,
    crucial_lemma_check,
    optimal_alpha,
    verify_young_1d,
    verify_yt_2d,
    yt_bound_2d,
    zeta,
)

console = Console(stderr=True)

WITNESS_TOLERANCE = 1e-12
PARTITION_LISTING_LIMIT = 1000


class Command(str, Enum):
    VP = "vp"
    CVP = "cvp"
    SANDWICH = "sandwich"
    CHECK_CONTROL = "check-control"
    ALMOST_SUBADD = "almost-subadd"
    YOUNG1D = "young1d"
    YOUNG2D = "young2d"
    CRUCIAL_LEMMA = "crucial-lemma"
    FBM_COV = "fbm-cov"
    FBM_SCAN = "fbm-scan"
    FBM_COUNTEREXAMPLE = "fbm-counterexample"
    ENUMERATE_PARTITIONS = "enumerate-partitions"
    SELFTEST = "selftest"


# Parameters each command cannot run without
_REQUIRED: dict[Command, tuple[str, ...]] = {
    Command.VP: ("input_path", "p"),
    Command.CVP: ("input_path", "p"),
    Command.SANDWICH: ("input_path", "p", "eps"),
    Command.CHECK_CONTROL: ("input_path", "p"),
    Command.ALMOST_SUBADD: ("input_path", "p"),
    Command.YOUNG1D: ("p",),
    Command.YOUNG2D: ("p",),
    Command.CRUCIAL_LEMMA: ("input_path", "p"),
    Command.FBM_COV: ("H",),
    Command.FBM_SCAN: ("H",),
    Command.FBM_COUNTEREXAMPLE: ("H",),
    Command.ENUMERATE_PARTITIONS: (),
    Command.SELFTEST: (),
}


@dataclass
class RunConfig:
    """One command invocation.

    Caps and tolerance left as None fall back to the process configuration
    (see :mod:`rectvar.config`). ``q`` is the exponent of y in the Young commands and
    defaults to ``p``.
    """

    command: Command | str
    input_path: Path | str | None = None
    p: float | None = None
    eps: float | None = None
    H: float | None = None
    alpha: float | None = None
    q: float | None = None
    partition_cap: int | None = None
    exact_cap: int | None = None
    tolerance: float | None = None
    seed: int = 0
    output: Path | str | None = None
    sizes: tuple[int, ...] = (4, 6, 8, 10)
    s: float = 0.0
    t: float = 1.0
    n: int | None = None
    nx: int = 2
    ny: int = 2
    quick: bool = False

    def __post_init__(self):
        try:
            self.command = Command(self.command)
        except ValueError:
            raise ConfigError(f"unknown command: {self.command!r}") from None
        self.sizes = tuple(int(k) for k in self.sizes)

    def validate(self) -> "RunConfig":
        """Check per-command required parameters and value ranges.

        Raises:
            ConfigError: A parameter is missing or out of range
        """
        for name in _REQUIRED[self.command]:
            if getattr(self, name) is None:
                flag = name.replace("_", "-") if name != "input_path" else "input"
                raise ConfigError(f"{self.command.value} needs --{flag}")
        for name in ("partition_cap", "exact_cap"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.tolerance is not None and not 0 <= self.tolerance < 1:
            raise ConfigError(f"tolerance must lie in [0, 1), got {self.tolerance}")
        if self.p is not None and not self.p >= 1:
            raise ConfigError(f"p must be >= 1, got {self.p}")
        if self.q is not None and not self.q >= 1:
            raise ConfigError(f"q must be >= 1, got {self.q}")
        if self.eps is not None and not self.eps > 0:
            raise ConfigError(f"eps must be > 0, got {self.eps}")
        if self.H is not None and not 0 < self.H <= 0.5:
            raise ConfigError(f"H must lie in (0, 1/2], got {self.H}")
        if self.n is not None and self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        if self.nx < 1 or self.ny < 1:
            raise ConfigError(f"cell grid must be at least 1x1, got {self.nx}x{self.ny}")
        if any(k < 2 for k in self.sizes):
            raise ConfigError(f"scan sizes must be at least 2, got {list(self.sizes)}")
        if not self.s < self.t:
            raise ConfigError(f"need s < t, got s={self.s}, t={self.t}")
        return self

    def to_dict(self) -> dict:
        """Config echo for reports. The output path is left out so reports do not depend on it."""
        data = asdict(self)
        data["command"] = self.command.value
        data.pop("output")
        if data["input_path"] is not None:
            data["input_path"] = str(data["input_path"])
        data["sizes"] = list(self.sizes)
        return data


@contextmanager
def _overrides(cfg: RunConfig) -> Iterator[None]:
    """Apply the run's caps and tolerance for the duration of the run."""
    saved_env = {
        var: os.environ.get(var)
        for var in (config.PARTITION_CAP_ENV_VAR, config.EXACT_CAP_ENV_VAR)
    }
    saved_tol = config.get_check_tolerance()
    try:
        if cfg.partition_cap is not None:
            config.set_partition_cap(cfg.partition_cap)
        if cfg.exact_cap is not None:
            config.set_exact_cap(cfg.exact_cap)
        if cfg.tolerance is not None:
            config.set_check_tolerance(cfg.tolerance)
        yield
    finally:
        for var, value in saved_env.items():
            if value is None:
                os.environ.pop(var, None)
            else:
                os.environ[var] = value
        config.set_check_tolerance(saved_tol)


def _witness_check(f: GridFunction, result, label: str) -> InequalityReport:
    report = InequalityReport("witness")
    report.add(check_close(
        f"{label} objective re-evaluated on its witness",
        witness_objective(result, f),
        result.power_sum,
        rel=WITNESS_TOLERANCE,
        witness=result.to_dict()["witness"],
    ))
    return report


def _vp(cfg: RunConfig, report: Report) -> None:
    f = load_grid_function(cfg.input_path)
    limit = config.get_exact_cap()
    interior = max(f.shape) - 2
    if interior <= limit:
        result = vp_2d_exact(f, cfg.p, cap=limit)
    else:
        if not _quiet:
            console.print(
                f"[yellow]⚠ {interior} interior points exceed the exact cap {limit}; "
                f"using coordinate ascent (lower bound)[/yellow]"
            )
        result = vp_2d_alternating(f, cfg.p)
    report.results["vp"] = result.to_dict()
    report.checks.append(_witness_check(f, result, "V_p"))


def _cvp(cfg: RunConfig, report: Report) -> None:
    f = load_grid_function(cfg.input_path)
    result = controlled_pvar_exact(f, cfg.p)
    report.results["cvp"] = result.to_dict()
    checks = _witness_check(f, result, "|f|_p-var")
    checks.add(check_le(
        "witness partitions the domain (invalid count <= 0)",
        0.0 if validate_partition(result.witness) else 1.0,
        0.0,
        witness={"partition": result.witness},
    ))
    report.checks.append(checks)


def _sandwich(cfg: RunConfig, report: Report) -> None:
    f = load_grid_function(cfg.input_path)
    report.results["constant"] = sandwich_constant(cfg.p, cfg.eps)
    report.checks.append(verify_sandwich(f, cfg.p, cfg.eps))


def _check_control(cfg: RunConfig, report: Report) -> None:
    f = load_grid_function(cfg.input_path)
    w = control_from_cpvar(f, cfg.p)
    report.results["control"] = w.to_frame().to_dict(orient="records")
    report.checks.append(check_superadditive(w))
    report.checks.append(dominates_increments(w, f, cfg.p))


def _almost_subadd(cfg: RunConfig, report: Report) -> None:
    f = load_grid_function(cfg.input_path)
    w = control_from_cpvar(f, cfg.p)
    report.checks.append(almost_subadd_sweep(w, cfg.p))


def _exponents(cfg: RunConfig) -> ExponentTriple:
    e = ExponentTriple(cfg.p, cfg.p if cfg.q is None else cfg.q, cfg.alpha)
    if not e.theta > 1:
        raise ConfigError(f"theta = 1/p + 1/q must exceed 1, got {e.theta}")
    return e


def _young1d(cfg: RunConfig, report: Report) -> None:
    e = _exponents(cfg)
    if cfg.input_path is not None:
        x, y = load_paths(cfg.input_path)
    else:
        rng = np.random.default_rng(cfg.seed)
        n = cfg.n or 8
        x = rng.uniform(-1.0, 1.0, n).tolist()
        y = [0.0, *rng.uniform(-1.0, 1.0, n - 1).tolist()]
    report.results.update({"x": x, "y": y, "theta": e.theta, "constant": 1 + zeta(e.theta)})
    report.checks.append(verify_young_1d(y, x, e, seed=cfg.seed))


def _young2d(cfg: RunConfig, report: Report) -> None:
    e = _exponents(cfg)
    if cfg.input_path is not None:
        x, y = load_grid_pair(cfg.input_path)
    else:
        rng = np.random.default_rng(cfg.seed)
        shape = (cfg.nx + 1, cfg.ny + 1)
        xv, yv = rng.uniform(-1.0, 1.0, shape), rng.uniform(-1.0, 1.0, shape)
        for v in (xv, yv):
            v[0, :] = 0.0
            v[:, 0] = 0.0
        x, y = GridFunction.on_integer_grid(xv), GridFunction.on_integer_grid(yv)
    if e.alpha is None:
        e = e.with_alpha(optimal_alpha(e.theta))
    report.results.update({
        "theta": e.theta,
        "alpha": e.alpha,
        "constant": yt_bound_2d(e),
        "x": x.values,
        "y": y.values,
    })
    report.checks.append(verify_yt_2d(y, x, e, seed=cfg.seed))


def _crucial_lemma(cfg: RunConfig, report: Report) -> None:
    x = load_grid_function(cfg.input_path)
    q = controlled_pvar_exact(x, cfg.p).witness
    report.results["q"] = q
    report.checks.append(crucial_lemma_check(x, q, cfg.p))


def _fbm_cov(cfg: RunConfig, report: Report) -> None:
    k = HurstKernel(cfg.H)
    grid = Dissection.uniform(cfg.s, cfg.t, cfg.n or 9)
    report.results["grid"] = grid
    report.results["covariance"] = covariance_grid(k, grid).values
    off_diagonal = Rect(0.0, 1.0, 1.0, 2.0)
    closed = InequalityReport("fbm-closed-form")
    closed.add(check_close(
        "C^H([0,1]x[1,2]) = 2^(2H-1) - 1",
        fbm_rect_cov(k, off_diagonal),
        2 ** (2 * k.H - 1) - 1,
        rel=1e-12,
        witness={"rect": off_diagonal},
    ))
    report.checks.append(closed)
    report.checks.append(scaling_check(k, Rect(cfg.s, cfg.t, cfg.s, cfg.t), 2.0))
    report.checks.append(neg_correlation_check(k, grid))


def _fbm_scan(cfg: RunConfig, report: Report) -> None:
    k = HurstKernel(cfg.H)
    frame = fbm_variation_scan(k, cfg.s, cfg.t, cfg.sizes)
    report.results["scan"] = frame.to_dict(orient="records")
    report.results["c_H"] = float(frame["ratio"].max())


def _fbm_counterexample(cfg: RunConfig, report: Report) -> None:
    k = HurstKernel(cfg.H)
    report.checks.append(superadditivity_counterexample(k, cfg.n or 5))


def _enumerate_partitions(cfg: RunConfig, report: Report) -> None:
    count = count_rect_partitions(cfg.nx, cfg.ny)
    report.results["count"] = count
    if count > PARTITION_LISTING_LIMIT:
        report.results["partitions"] = None
        return
    partitions = list(enumerate_rect_partitions(cfg.nx, cfg.ny))
    report.results["partitions"] = [part.as_list() for part in partitions]
    checks = InequalityReport("enumeration")
    invalid = [part for part in partitions if not validate_partition(part)]
    checks.add(check_le(
        "invalid enumerated partitions <= 0",
        len(invalid),
        0,
        witness={"partitions": invalid[:5]},
    ))
    checks.add(check_close(
        "enumerated = counted",
        len(partitions),
        count,
        witness={"nx": cfg.nx, "ny": cfg.ny},
    ))
    report.checks.append(checks)


def _selftest(cfg: RunConfig, report: Report) -> None:
    suite_report = selftest(cfg.seed, cfg.quick, quiet=_quiet)
    report.checks.extend(suite_report.checks)
    report.results.update(suite_report.results)
    report.timing.update(suite_report.timing)


_HANDLERS: dict[Command, Callable[[RunConfig, Report], None]] = {
    Command.VP: _vp,
    Command.CVP: _cvp,
    Command.SANDWICH: _sandwich,
    Command.CHECK_CONTROL: _check_control,
    Command.ALMOST_SUBADD: _almost_subadd,
    Command.YOUNG1D: _young1d,
    Command.YOUNG2D: _young2d,
    Command.CRUCIAL_LEMMA: _crucial_lemma,
    Command.FBM_COV: _fbm_cov,
    Command.FBM_SCAN: _fbm_scan,
    Command.FBM_COUNTEREXAMPLE: _fbm_counterexample,
    Command.ENUMERATE_PARTITIONS: _enumerate_partitions,
    Command.SELFTEST: _selftest,
}

_quiet = False


def run(cfg: RunConfig, quiet: bool = False) -> Report:
    """Validate ``cfg``, dispatch it and collect a report.

    Args:
        cfg: The command and its parameters
        quiet: If True, suppress progress output

    Returns:
        Report whose ``consistent`` flag decides the exit status

    Raises:
        ConfigError: Missing or invalid parameters
        CapExceededError: An exact search would exceed its cap
        GridError: Input grid could not be loaded or used
    """
    global _quiet
    _quiet = quiet
    cfg.validate()
    report = Report(
        command=cfg.command.value,
        config=cfg.to_dict(),
        schema_hashes=get_all_schema_hashes(),
    )
    start = time.perf_counter()
    with _overrides(cfg):
        _HANDLERS[cfg.command](cfg, report)
    report.timing.setdefault("total_seconds", time.perf_counter() - start)
    return report


def selftest(seed: int = 42, quick: bool = False, quiet: bool = False) -> Report:
    """Run every randomized verification suite with one seed.

    Args:
        seed: Root seed; each suite and instance derives its own from it
        quick: If True, shrink instance counts for a smoke run
        quiet: If True, suppress progress output

    Returns:
        Report with one check group per suite and per-suite timing

    Example:
        >>> import rectvar as rv
        >>> report = rv.selftest(seed=42, quick=True, quiet=True)
        >>> report.consistent
        True
    """
    from suites import SUITES

    report = Report(
        command=Command.SELFTEST.value,
        config={"seed": seed, "quick": quick},
        schema_hashes=get_all_schema_hashes(),
    )
    total = time.perf_counter()
    for name, suite in SUITES:
        if not quiet:
            console.print(f"[cyan]Running {name}...[/cyan]")
        start = time.perf_counter()
        checks = suite(seed, quick, quiet=quiet)
        report.timing[name] = time.perf_counter() - start
        report.checks.append(checks)
        report.results[name] = {
            "records": len(checks.records),
            "consistent": checks.consistent,
            "notes": list(checks.notes),
        }
        if not quiet:
            mark = "[green]✓" if checks.consistent else "[red]✗"
            console.print(f"{mark} {name}: {len(checks.records)} records[/]")
    report.timing["total_seconds"] = time.perf_counter() - total
    return report
