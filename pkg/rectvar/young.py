"""Discrete Young integrals in one and two parameters and their maximal inequalities.

One parameter: I^D = Σ y_{t_i} (x_{t_i} - x_{t_{i-1}}) satisfies
|I^D| <= (1 + ζ(θ)) |x|_{p-var} |y|_{q-var} whenever y_0 = 0 and θ = 1/p + 1/q > 1.
Two parameters (y vanishing on both axes): |I^{D,D'}| <= c_YT V_p(x) V_q(y) with
c_YT = (1 + ζ(θ/α))^α ζ(α) + (1 + ζ(θ)) for any α in (1, θ).

Both bounds come from removing one well-chosen point at a time. The cascades below replay
that removal and record the bound certified at every step.
"""

from collections.abc import Sequence
from dataclasses import dataclass, replace
from functools import lru_cache
from math import factorial

import numpy as np
from scipy.optimize import minimize_scalar

from rectvar import config
from rectvar.errors import DomainError, GridError, PreconditionError
from rectvar.geometry import Dissection, RectPartition
from rectvar.gridfunc import GridFunction, build_dual_step_function
from rectvar.report import InequalityReport, check_le, within
from rectvar.variation import controlled_pvar_exact, pvar_1d, sub_dissections, vp_2d_exact

# B_2, B_4, ..., B_14
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)
_ZETA_DIRECT_TERMS = 16


def zeta(s: float) -> float:
    """Riemann zeta for real s > 1.

    Sums the first terms directly and the tail by Euler-Maclaurin; the pole term
    N^{1-s}/(s-1) is exact, so accuracy holds all the way down to s -> 1+.
    """
    if not s > 1:
        raise DomainError(f"zeta needs s > 1, got {s}")
    n = _ZETA_DIRECT_TERMS
    head = float(np.sum(np.arange(1, n, dtype=float) ** -s))
    tail = n ** (1 - s) / (s - 1) + 0.5 * n ** -s
    rising = s  # s (s+1) ... (s+2k-2)
    for k, b in enumerate(_BERNOULLI, start=1):
        tail += b / factorial(2 * k) * rising * n ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return head + tail


@dataclass(frozen=True)
class ExponentTriple:
    """Variation exponents p (for x) and q (for y), θ = 1/p + 1/q, optional α in (1, θ)."""

    p: float
    q: float
    alpha: float | None = None

    def __post_init__(self):
        if not (self.p >= 1 and self.q >= 1):
            raise DomainError(f"p and q must be >= 1, got p={self.p}, q={self.q}")

    @property
    def theta(self) -> float:
        return 1.0 / self.p + 1.0 / self.q

    @classmethod
    def symmetric(cls, theta: float) -> "ExponentTriple":
        """p = q = 2/θ."""
        return cls(2.0 / theta, 2.0 / theta)

    def with_alpha(self, alpha: float) -> "ExponentTriple":
        return replace(self, alpha=alpha)


def _require_theta(e: ExponentTriple) -> None:
    if not e.theta > 1:
        raise DomainError(f"theta = 1/p + 1/q must exceed 1, got {e.theta}")


def _require_alpha(e: ExponentTriple) -> float:
    _require_theta(e)
    if e.alpha is None or not 1 < e.alpha < e.theta:
        raise DomainError(f"alpha must lie in (1, {e.theta}), got {e.alpha}")
    return e.alpha


def yt_bound_2d(e: ExponentTriple) -> float:
    """(1 + ζ(θ/α))^α ζ(α) + (1 + ζ(θ))."""
    alpha = _require_alpha(e)
    return (1 + zeta(e.theta / alpha)) ** alpha * zeta(alpha) + (1 + zeta(e.theta))


def optimal_alpha(theta: float) -> float:
    """α in (1 + 1e-6, θ - 1e-6) minimizing yt_bound_2d (bounded Brent search)."""
    lo, hi = 1 + 1e-6, theta - 1e-6
    if not lo < hi:
        raise DomainError(f"theta = {theta} leaves no room for alpha in (1, theta)")
    result = minimize_scalar(
        lambda a: (1 + zeta(theta / a)) ** a * zeta(a),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return float(result.x)


@dataclass(frozen=True)
class RemovalStep:
    """One point removal: the integral (or Δ) before and after, and the certified bound.

    ``one_sided`` steps certify ``before - after <= bound``; the others ``|before - after|``.
    """

    removed_index: int
    before: float
    after: float
    bound: float
    points: int
    one_sided: bool = False

    @property
    def difference(self) -> float:
        return self.before - self.after

    @property
    def certified(self) -> bool:
        size = self.difference if self.one_sided else abs(self.difference)
        return within(size, self.bound)

    def to_dict(self) -> dict:
        return {
            "removed_index": self.removed_index,
            "before": self.before,
            "after": self.after,
            "bound": self.bound,
            "points": self.points,
            "one_sided": self.one_sided,
            "certified": self.certified,
        }


# One parameter

def _path_indices(d: Sequence[float] | Dissection | None, n: int) -> np.ndarray:
    if d is None:
        return np.arange(n)
    idx = np.asarray([int(round(v)) for v in d], dtype=int)
    if len(idx) < 2 or idx[0] != 0 or idx[-1] != n - 1 or np.any(np.diff(idx) <= 0):
        raise GridError(f"not a sub-dissection of 0..{n - 1}: {idx.tolist()}")
    return idx


def _paths(y: Sequence[float], x: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    y_arr, x_arr = np.asarray(y, dtype=float), np.asarray(x, dtype=float)
    if y_arr.shape != x_arr.shape or y_arr.ndim != 1 or len(x_arr) < 2:
        raise GridError("y and x must be paths of equal length >= 2")
    return y_arr, x_arr


def discrete_integral_1d(
    y: Sequence[float], x: Sequence[float], d: Sequence[float] | Dissection | None = None
) -> float:
    """Σ_i y_{t_i} (x_{t_i} - x_{t_{i-1}}) over the index sub-dissection d (default: all)."""
    y_arr, x_arr = _paths(y, x)
    idx = _path_indices(d, len(x_arr))
    return float(np.sum(y_arr[idx[1:]] * np.diff(x_arr[idx])))


def _integrals_1d(y: np.ndarray, x: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """I^D for every boolean point mask (one row per dissection)."""
    cols = np.arange(len(x))
    last = np.maximum.accumulate(np.where(masks, cols, -1), axis=1)
    prev = np.concatenate([np.full((len(masks), 1), -1), last[:, :-1]], axis=1)
    take = masks & (cols > 0)
    prev = np.where(take, prev, 0)
    return np.where(take, y[None, :] * (x[None, :] - x[prev]), 0.0).sum(axis=1)


@lru_cache(maxsize=32)
def _all_masks(n: int) -> np.ndarray:
    masks = np.zeros((1 << (n - 2), n), dtype=bool)
    for row, chain in enumerate(sub_dissections(n)):
        masks[row, list(chain)] = True
    masks.setflags(write=False)
    return masks


def _sampled_masks(n: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    masks = rng.random((samples, n)) < 0.5
    masks[:, 0] = masks[:, -1] = True
    masks[0, :] = True
    masks[1, 1:-1] = False
    return masks


def remove_best_point_1d(
    y: Sequence[float],
    x: Sequence[float],
    d: Sequence[float] | Dissection | None,
    e: ExponentTriple,
    x_var: float | None = None,
    y_var: float | None = None,
) -> RemovalStep:
    """Remove the interior point whose removal changes I^D the least.

    I^D - I^{D minus t_i} = -(y_{t_{i+1}} - y_{t_i})(x_{t_i} - x_{t_{i-1}}); the smallest
    of these is at most (n-1)^{-θ} |x|_{p-var} |y|_{q-var} for n intervals. Ties go to the
    smallest index.
    """
    _require_theta(e)
    y_arr, x_arr = _paths(y, x)
    idx = _path_indices(d, len(x_arr))
    if len(idx) < 3:
        raise PreconditionError("point removal needs a dissection with at least 3 points")
    xv = pvar_1d(x_arr, e.p).value if x_var is None else x_var
    yv = pvar_1d(y_arr, e.q).value if y_var is None else y_var

    dy = np.diff(y_arr[idx])
    dx = np.diff(x_arr[idx])
    k0 = 1 + int(np.argmin(np.abs(dy[1:] * dx[:-1])))
    intervals = len(idx) - 1
    return RemovalStep(
        removed_index=int(idx[k0]),
        before=discrete_integral_1d(y_arr, x_arr, idx),
        after=discrete_integral_1d(y_arr, x_arr, np.delete(idx, k0)),
        bound=(intervals - 1) ** -e.theta * xv * yv,
        points=len(idx),
    )


def young_cascade_1d(
    y: Sequence[float],
    x: Sequence[float],
    e: ExponentTriple,
    d: Sequence[float] | Dissection | None = None,
    x_var: float | None = None,
    y_var: float | None = None,
) -> list[RemovalStep]:
    """Remove points one at a time from d (default: all points) down to {0, T}."""
    y_arr, x_arr = _paths(y, x)
    xv = pvar_1d(x_arr, e.p).value if x_var is None else x_var
    yv = pvar_1d(y_arr, e.q).value if y_var is None else y_var
    idx = list(_path_indices(d, len(x_arr)))
    steps = []
    while len(idx) > 2:
        step = remove_best_point_1d(y_arr, x_arr, idx, e, xv, yv)
        steps.append(step)
        idx.remove(step.removed_index)
    return steps


def verify_young_1d(
    y: Sequence[float],
    x: Sequence[float],
    e: ExponentTriple,
    exhaustive_limit: int = config.YOUNG_EXHAUSTIVE_POINTS,
    samples: int = config.YOUNG_SAMPLES,
    seed: int = 0,
) -> InequalityReport:
    """Check the one-parameter maximal inequality over sub-dissections and replay the cascade.

    Exhaustive over all sub-dissections up to ``exhaustive_limit`` points, sampled beyond.
    """
    _require_theta(e)
    y_arr, x_arr = _paths(y, x)
    if y_arr[0] != 0:
        raise PreconditionError(f"y must start at 0, got y_0 = {y_arr[0]}")
    n = len(x_arr)
    xv, yv = pvar_1d(x_arr, e.p).value, pvar_1d(y_arr, e.q).value
    constant = 1 + zeta(e.theta)
    report = InequalityReport("young-1d")

    exhaustive = n <= exhaustive_limit
    masks = _all_masks(n) if exhaustive else _sampled_masks(n, samples, seed)
    integrals = _integrals_1d(y_arr, x_arr, masks)
    k = int(np.argmax(np.abs(integrals)))
    report.add(check_le(
        "|I^D| <= (1 + zeta(theta)) |x|_p-var |y|_q-var",
        abs(float(integrals[k])),
        constant * xv * yv,
        constant=constant,
        witness={"dissection": np.flatnonzero(masks[k])},
        note="all sub-dissections" if exhaustive else f"{len(masks)} sampled sub-dissections",
    ))
    report.add(check_le(
        "|y_0,T x_0,T| <= |x|_p-var |y|_q-var",
        abs((y_arr[-1] - y_arr[0]) * (x_arr[-1] - x_arr[0])),
        xv * yv,
        constant=1.0,
        witness={"dissection": [0, n - 1]},
    ))

    steps = young_cascade_1d(y_arr, x_arr, e, x_var=xv, y_var=yv)
    for step in steps:
        report.add(check_le(
            f"removal at {step.points} points",
            abs(step.difference),
            step.bound,
            witness=step.to_dict(),
        ))
    zeta_theta = constant - 1
    report.add(check_le(
        "cascade total <= zeta(theta) |x|_p-var |y|_q-var",
        sum(abs(s.difference) for s in steps),
        zeta_theta * xv * yv,
        constant=zeta_theta,
        witness={"steps": [s.to_dict() for s in steps]},
    ))
    return report


# Two parameters

def _common_grid(y: GridFunction, x: GridFunction) -> None:
    if y.shape != x.shape or y.xs != x.xs or y.ys != x.ys:
        raise GridError("y and x must live on the same grid")


def _axis_indices(axis: Dissection, d: Sequence[int] | Dissection | None) -> list[int]:
    if d is None:
        return list(range(len(axis)))
    if isinstance(d, Dissection):
        idx = [axis.index_of(v) for v in d]
    else:
        idx = [int(v) for v in d]
    if len(idx) < 2 or idx[0] != 0 or idx[-1] != len(axis) - 1 or any(
        b <= a for a, b in zip(idx, idx[1:])
    ):
        raise GridError(f"not a sub-dissection of the grid axis: {idx}")
    return idx


def _require_zero_axes(y: GridFunction) -> None:
    if np.any(y.values[0, :] != 0) or np.any(y.values[:, 0] != 0):
        raise PreconditionError("y must vanish on both axes (first row and column)")


def _integral(y: np.ndarray, x: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> float:
    sub = x[np.ix_(rows, cols)]
    inc = np.diff(np.diff(sub, axis=0), axis=1)
    return float((y[np.ix_(rows[1:], cols[1:])] * inc).sum())


def discrete_integral_2d(
    y: GridFunction,
    x: GridFunction,
    dx: Sequence[int] | Dissection | None = None,
    dy: Sequence[int] | Dissection | None = None,
) -> float:
    """Σ_{i,j} y(t_i, t'_j) x([t_{i-1},t_i]×[t'_{j-1},t'_j]).

    ``dx``/``dy`` are dissections in grid coordinates or lists of grid indices; both
    default to the full grid.
    """
    _common_grid(y, x)
    rows = _axis_indices(x.xs, dx)
    cols = _axis_indices(x.ys, dy)
    return _integral(y.values, x.values, rows, cols)


def _outer_differences(
    y: np.ndarray, x: np.ndarray, rows: list[int], cols: list[int]
) -> np.ndarray:
    full = _integral(y, x, rows, cols)
    return np.array([
        full - _integral(y, x, rows[:k] + rows[k + 1:], cols) for k in range(1, len(rows) - 1)
    ])


def _delta(y: np.ndarray, x: np.ndarray, rows: list[int], cols: list[int], alpha: float) -> float:
    """Δ^{D,D'} = Σ_i |I^{D,D'} - I^{D minus t_i, D'}|^{1/α}."""
    if len(rows) < 3:
        return 0.0
    return float((np.abs(_outer_differences(y, x, rows, cols)) ** (1 / alpha)).sum())


def remove_best_point_2d(
    y: GridFunction,
    x: GridFunction,
    dx: Sequence[int] | Dissection | None,
    dy: Sequence[int] | Dissection | None,
    e: ExponentTriple,
    x_var: float | None = None,
    y_var: float | None = None,
) -> RemovalStep:
    """Remove the interior s-point t_i whose removal changes I^{D,D'} the least.

    The change is certified against (n-1)^{-α} (1 + ζ(θ/α))^α V_p(x) V_q(y) for n
    intervals in D. Ties go to the smallest index.
    """
    _common_grid(y, x)
    _require_zero_axes(y)
    alpha = _require_alpha(e)
    rows = _axis_indices(x.xs, dx)
    cols = _axis_indices(x.ys, dy)
    if len(rows) < 3:
        raise PreconditionError("point removal needs a dissection with at least 3 points")
    xv = vp_2d_exact(x, e.p).value if x_var is None else x_var
    yv = vp_2d_exact(y, e.q).value if y_var is None else y_var

    diffs = _outer_differences(y.values, x.values, rows, cols)
    k0 = 1 + int(np.argmin(np.abs(diffs)))
    intervals = len(rows) - 1
    before = _integral(y.values, x.values, rows, cols)
    return RemovalStep(
        removed_index=rows[k0],
        before=before,
        after=_integral(y.values, x.values, rows[:k0] + rows[k0 + 1:], cols),
        bound=(intervals - 1) ** -alpha * (1 + zeta(e.theta / alpha)) ** alpha * xv * yv,
        points=len(rows),
    )


def inner_cascade_2d(
    y: GridFunction,
    x: GridFunction,
    rows: Sequence[int],
    cols: Sequence[int],
    e: ExponentTriple,
    x_var: float,
    y_var: float,
) -> list[RemovalStep]:
    """Remove t'-points from D' while tracking Δ^{D,D'}.

    Each step removes the t'_j minimizing Δ^{D,D'} - Δ^{D,D' minus t'_j} and certifies
    that decrease against (m-1)^{-θ/α} V_p(x)^{1/α} V_q(y)^{1/α} for m intervals in D'.
    """
    alpha = _require_alpha(e)
    rows, cols = list(rows), list(cols)
    scale = (x_var * y_var) ** (1 / alpha)
    steps = []
    while len(cols) > 2:
        current = _delta(y.values, x.values, rows, cols, alpha)
        drops = np.array([
            current - _delta(y.values, x.values, rows, cols[:k] + cols[k + 1:], alpha)
            for k in range(1, len(cols) - 1)
        ])
        k0 = 1 + int(np.argmin(drops))
        intervals = len(cols) - 1
        steps.append(RemovalStep(
            removed_index=cols[k0],
            before=current,
            after=current - float(drops[k0 - 1]),
            bound=(intervals - 1) ** (-e.theta / alpha) * scale,
            points=len(cols),
            one_sided=True,
        ))
        del cols[k0]
    return steps


def young_cascade_2d(
    y: GridFunction,
    x: GridFunction,
    e: ExponentTriple,
    x_var: float,
    y_var: float,
) -> tuple[list[RemovalStep], list[list[RemovalStep]]]:
    """Outer s-point removal from the full grid, with the inner cascade at every stage.

    Returns:
        (outer steps, inner cascades), one inner cascade per outer stage before removal
    """
    rows = list(range(len(x.xs)))
    cols = list(range(len(x.ys)))
    outer, inner = [], []
    while len(rows) > 2:
        inner.append(inner_cascade_2d(y, x, rows, cols, e, x_var, y_var))
        step = remove_best_point_2d(y, x, rows, cols, e, x_var, y_var)
        outer.append(step)
        rows.remove(step.removed_index)
    return outer, inner


def verify_yt_2d(
    y: GridFunction,
    x: GridFunction,
    e: ExponentTriple,
    pair_limit: int = config.YOUNG_PAIR_LIMIT,
    samples: int = config.YOUNG_SAMPLES,
    seed: int = 0,
) -> InequalityReport:
    """Check |I^{D,D'}| <= c_YT V_p(x) V_q(y) and replay the two-parameter cascade.

    Dissection pairs are exhaustive while their number stays within ``pair_limit``,
    sampled otherwise. α defaults to the minimizer of the constant.
    """
    _common_grid(y, x)
    _require_zero_axes(y)
    _require_theta(e)
    if e.alpha is None:
        e = e.with_alpha(optimal_alpha(e.theta))
    alpha = _require_alpha(e)
    xv = vp_2d_exact(x, e.p).value
    yv = vp_2d_exact(y, e.q).value
    constant = yt_bound_2d(e)
    n, m = x.shape
    report = InequalityReport("young-towghi-2d")

    if 1 << ((n - 2) + (m - 2)) <= pair_limit:
        pairs = [(list(r), list(c)) for r in sub_dissections(n) for c in sub_dissections(m)]
        note = "all dissection pairs"
    else:
        rng = np.random.default_rng(seed)
        pairs = [(list(range(n)), list(range(m)))]
        for _ in range(samples):
            r = [0, *(k for k in range(1, n - 1) if rng.random() < 0.5), n - 1]
            c = [0, *(k for k in range(1, m - 1) if rng.random() < 0.5), m - 1]
            pairs.append((r, c))
        note = f"{len(pairs)} sampled dissection pairs"
    values = [abs(_integral(y.values, x.values, r, c)) for r, c in pairs]
    k = int(np.argmax(values))
    report.add(check_le(
        "|I^(D,D')| <= c_YT V_p(x) V_q(y)",
        values[k],
        constant * xv * yv,
        constant=constant,
        witness={"dx": x.xs.subset(pairs[k][0]), "dy": x.ys.subset(pairs[k][1]), "alpha": alpha},
        note=note,
    ))

    # Boundary integral: the one-parameter inequality along t.
    boundary = [
        (abs(_integral(y.values, x.values, [0, n - 1], list(c))), c)
        for c in (sub_dissections(m) if m - 2 <= 16 else [tuple(range(m))])
    ]
    value, c_best = max(boundary, key=lambda v: v[0])
    report.add(check_le(
        "|I^({0,T},D')| <= (1 + zeta(theta)) V_p(x) V_q(y)",
        value,
        (1 + zeta(e.theta)) * xv * yv,
        constant=1 + zeta(e.theta),
        witness={"dy": x.ys.subset(c_best)},
    ))

    outer, inner = young_cascade_2d(y, x, e, xv, yv)
    scale = (xv * yv) ** (1 / alpha)
    rows = list(range(n))
    for step, cascade in zip(outer, inner):
        for sub in cascade:
            report.add(check_le(
                f"inner removal at {step.points}x{sub.points} points",
                sub.difference,
                sub.bound,
                witness={"rows": list(rows), **sub.to_dict()},
            ))
        base = _delta(y.values, x.values, rows, [0, m - 1], alpha)
        report.add(check_le(
            f"Delta^(D,{{0,T}}) <= V_p^(1/alpha) V_q^(1/alpha) at {step.points} points",
            base,
            scale,
            witness={"rows": list(rows)},
        ))
        report.add(check_le(
            f"Delta^(D,D') <= (1 + zeta(theta/alpha)) V_p^(1/alpha) V_q^(1/alpha) at {step.points} points",
            _delta(y.values, x.values, rows, list(range(m)), alpha),
            (1 + zeta(e.theta / alpha)) * scale,
            constant=1 + zeta(e.theta / alpha),
            witness={"rows": list(rows)},
        ))
        report.add(check_le(
            f"outer removal at {step.points} points",
            abs(step.difference),
            step.bound,
            witness={"rows": list(rows), **step.to_dict()},
        ))
        rows.remove(step.removed_index)
    return report


def crucial_lemma_check(
    x: GridFunction, q: RectPartition, p: float, cap: int | None = None
) -> InequalityReport:
    """Check V_{p'}(y) <= |y|_{p'-var} <= 4 (Σ_j |x(Q_j)|^p)^{1/p'} for the dual step function.

    y is built from x and the partition q by build_dual_step_function; p' = p/(p-1).
    """
    if not p > 1:
        raise DomainError(f"p must be > 1 so that p' is finite, got {p}")
    y = build_dual_step_function(x, q, p)
    conjugate = p / (p - 1)
    vp = vp_2d_exact(y, conjugate)
    cp = controlled_pvar_exact(y, conjugate, cap=cap)
    total = sum(abs(x.increment(x.index_rect(piece))) ** p for piece in q.rects)
    bound = 4.0 * total ** (1 / conjugate) if total > 0 else 0.0

    report = InequalityReport("dual-step-function")
    report.add(check_le(
        "V_p'(y) <= |y|_p'-var",
        vp.value,
        cp.value,
        witness={"dx": vp.witness[0], "dy": vp.witness[1], "partition": cp.witness},
    ))
    report.add(check_le(
        "|y|_p'-var <= 4 (sum |x(Q_j)|^p)^(1/p')",
        cp.value,
        bound,
        constant=4.0,
        witness={"q": q, "partition": cp.witness},
    ))
    return report
