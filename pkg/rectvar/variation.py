"""1D p-variation, grid-like 2D p-variation V_p and controlled p-variation.

Values are reported both as the p-th power sum Σ|f(A)|^p and as the norm (power sum)^{1/p}.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations

import numpy as np

from rectvar import config
from rectvar.errors import CapExceededError, DomainError, GridError
from rectvar.geometry import Dissection, Rect, RectPartition, best_rectangulation
from rectvar.gridfunc import GridFunction, rect_increment
from rectvar.report import InequalityReport, check_close, check_le


class Method(str, Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class VariationResult:
    """A computed variation with the dissections or partition achieving it.

    ``bound`` is "exact" when the value is the true supremum for the input, "lower" when it
    is only a lower bound (heuristic search, or a function sampled off its own grid).
    """

    value: float
    power_sum: float
    p: float
    witness: tuple[Dissection, Dissection] | Dissection | RectPartition
    method: Method
    domain: Rect | None
    bound: str

    def to_dict(self) -> dict:
        from rectvar.report import to_jsonable

        witness = self.witness
        if isinstance(witness, tuple):
            witness = {"dx": witness[0], "dy": witness[1]}
        return to_jsonable({
            "value": self.value,
            "power_sum": self.power_sum,
            "p": self.p,
            "method": self.method.value,
            "bound": self.bound,
            "domain": self.domain,
            "witness": witness,
        })


def _check_p(p: float) -> None:
    if not p >= 1:
        raise DomainError(f"p must be >= 1, got {p}")


def _norm(power_sum: float, p: float) -> float:
    return float(power_sum) ** (1.0 / p) if power_sum > 0 else 0.0


def interval_dp(weights: np.ndarray) -> tuple[float, list[int]]:
    """Best chain 0 = k_0 < ... < k_r = n-1 maximizing Σ weights[k_{i-1}, k_i].

    M(j) = max_{i<j} M(i) + weights[i, j]; ties go to the chain with fewer points.
    """
    n = weights.shape[0]
    best = np.zeros(n)
    counts = np.ones(n, dtype=int)
    links = np.zeros(n, dtype=int)
    for j in range(1, n):
        cand = best[:j] + weights[:j, j]
        top = cand.max()
        ties = np.flatnonzero(cand == top)
        k = int(ties[np.argmin(counts[ties])])
        best[j], counts[j], links[j] = top, counts[k] + 1, k
    chain = [n - 1]
    while chain[-1] != 0:
        chain.append(int(links[chain[-1]]))
    chain.reverse()
    return float(best[-1]), chain


def pvar_1d(path: Sequence[float], p: float) -> VariationResult:
    """Exact p-variation of a discrete path over all sub-dissections of its index set."""
    _check_p(p)
    x = np.asarray(path, dtype=float)
    if x.ndim != 1 or len(x) < 2:
        raise GridError("a path needs at least two points")
    weights = np.abs(x[None, :] - x[:, None]) ** p
    total, chain = interval_dp(weights)
    return VariationResult(
        value=_norm(total, p),
        power_sum=total,
        p=p,
        witness=Dissection(tuple(float(k) for k in chain)),
        method=Method.EXACT,
        domain=None,
        bound="exact",
    )


def _restricted(f: GridFunction, r: Rect | None) -> GridFunction:
    if r is None:
        return f
    return f.restrict(f.index_rect(r))


@lru_cache(maxsize=32)
def sub_dissections(n: int) -> tuple[tuple[int, ...], ...]:
    """Every index sub-dissection of 0..n-1 containing both endpoints."""
    inner = n - 2
    out = []
    for mask in range(1 << inner):
        out.append((0, *(k + 1 for k in range(inner) if mask >> k & 1), n - 1))
    return tuple(out)


def _column_weights(rows_diff: np.ndarray, p: float) -> np.ndarray:
    # W[c, d] = Σ_i |dg[i, d] - dg[i, c]|^p
    return (np.abs(rows_diff[:, None, :] - rows_diff[:, :, None]) ** p).sum(axis=0)


def vp_2d_exact(
    f: GridFunction, p: float, r: Rect | None = None, cap: int | None = None
) -> VariationResult:
    """Exact grid-like p-variation V_p(f; r) over all pairs of grid sub-dissections.

    Subsets of the shorter axis are enumerated exhaustively; for each one the best
    dissection of the other axis is found by the exact interval DP, which gives the same
    maximum as enumerating both axes jointly.
    """
    _check_p(p)
    g = _restricted(f, r)
    limit = config.get_exact_cap() if cap is None else cap
    for interior in (g.shape[0] - 2, g.shape[1] - 2):
        if interior > limit:
            raise CapExceededError("exact V_p interior points per axis", interior, limit)

    transposed = g.shape[0] > g.shape[1]
    vals = g.values.T if transposed else g.values
    best_total, best_rows, best_cols = -1.0, None, None
    for rows in sub_dissections(vals.shape[0]):
        dg = np.diff(vals[list(rows), :], axis=0)
        total, cols = interval_dp(_column_weights(dg, p))
        if total > best_total or (
            total == best_total and len(rows) + len(cols) < len(best_rows) + len(best_cols)
        ):
            best_total, best_rows, best_cols = total, rows, cols

    if transposed:
        best_rows, best_cols = best_cols, best_rows
    witness = (g.xs.subset(best_rows), g.ys.subset(best_cols))
    return VariationResult(
        value=_norm(best_total, p),
        power_sum=best_total,
        p=p,
        witness=witness,
        method=Method.EXACT,
        domain=g.domain,
        bound="exact" if g.native else "lower",
    )


def ascent_starts(
    n: int, rng: np.random.Generator, random_starts: int = config.HEURISTIC_RANDOM_STARTS
) -> list[list[int]]:
    """Starting index dissections of 0..n-1 for coordinate ascent.

    The full and two-point dissections, every one-interior-point dissection, the full
    dissection minus each interior point, every two-interior-point dissection while
    n - 2 <= HEURISTIC_PAIR_START_LIMIT, then ``random_starts`` seeded random subsets.
    Duplicates are dropped, order is kept.
    """
    inner = list(range(1, n - 1))
    starts = [tuple(range(n)), (0, n - 1)]
    starts += [(0, k, n - 1) for k in inner]
    starts += [tuple(i for i in range(n) if i != k) for k in inner]
    if len(inner) <= config.HEURISTIC_PAIR_START_LIMIT:
        starts += [(0, a, b, n - 1) for a, b in combinations(inner, 2)]
    if inner:
        for _ in range(random_starts):
            keep = rng.random(len(inner)) < 0.5
            starts.append((0, *(k for k, kept in zip(inner, keep) if kept), n - 1))
    return [list(s) for s in dict.fromkeys(starts)]


def vp_2d_alternating(
    f: GridFunction,
    p: float,
    r: Rect | None = None,
    max_sweeps: int = 100,
    seed: int = 0,
) -> VariationResult:
    """Coordinate-ascent lower bound for V_p(f; r).

    With one dissection fixed the other is optimized exactly by the interval DP; axes
    alternate until a sweep improves the value by less than a relative 1e-12. The ascent
    is restarted from every dissection of :func:`ascent_starts` on either axis and the best
    fixpoint is kept (ties: fewer points, then first found).
    """
    _check_p(p)
    g = _restricted(f, r)
    vals = g.values
    n, m = vals.shape
    rng = np.random.default_rng(seed)

    def best_rows(cols: list[int]) -> tuple[float, list[int]]:
        dg = np.diff(vals[:, cols], axis=1).T
        return interval_dp(_column_weights(dg, p))

    def best_cols(rows: list[int]) -> tuple[float, list[int]]:
        dg = np.diff(vals[rows, :], axis=0)
        return interval_dp(_column_weights(dg, p))

    def climb(rows: list[int]) -> tuple[float, list[int], list[int]]:
        total, cols = best_cols(rows)
        for _ in range(max_sweeps):
            new_total, rows = best_rows(cols)
            new_total, cols = best_cols(rows)
            improved = new_total - total
            total = new_total
            if improved <= config.TIE_TOLERANCE * max(1.0, abs(total)):
                break
        return total, rows, cols

    candidates = [climb(rows) for rows in ascent_starts(n, rng)]
    for start in ascent_starts(m, rng):
        total, rows = best_rows(start)
        candidates.append(climb(rows))

    total, rows, cols = min(candidates, key=lambda c: (-c[0], len(c[1]) + len(c[2])))
    return VariationResult(
        value=_norm(total, p),
        power_sum=total,
        p=p,
        witness=(g.xs.subset(rows), g.ys.subset(cols)),
        method=Method.HEURISTIC,
        domain=g.domain,
        bound="lower",
    )


def controlled_pvar_exact(
    f: GridFunction, p: float, r: Rect | None = None, cap: int | None = None
) -> VariationResult:
    """Exact controlled p-variation |f|_{p-var; r} over every rectangulation of the grid."""
    _check_p(p)
    g = _restricted(f, r)
    nx, ny = g.cells
    total, rects = best_rectangulation(nx, ny, lambda q: abs(g.increment(q)) ** p, cap)
    partition = RectPartition(tuple(g.to_rect(q) for q in rects), g.domain)
    return VariationResult(
        value=_norm(total, p),
        power_sum=total,
        p=p,
        witness=partition,
        method=Method.EXACT,
        domain=g.domain,
        bound="exact" if g.native else "lower",
    )


def evaluate_gridlike(f: GridFunction, p: float, dx: Dissection, dy: Dissection) -> float:
    """Σ_{i,j} |f([t_i,t_{i+1}]×[t'_j,t'_{j+1}])|^p for dissections on f's grid."""
    rows = [f.xs.index_of(v) for v in dx]
    cols = [f.ys.index_of(v) for v in dy]
    sub = f.values[np.ix_(rows, cols)]
    return float((np.abs(np.diff(np.diff(sub, axis=0), axis=1)) ** p).sum())


def evaluate_partition(f: GridFunction, p: float, partition: RectPartition) -> float:
    """Σ_{A ∈ partition} |f(A)|^p."""
    return float(sum(abs(rect_increment(f, a)) ** p for a in partition.rects))


def witness_objective(result: VariationResult, f: GridFunction) -> float:
    """Re-evaluate a 2D result's objective on its own witness."""
    if isinstance(result.witness, RectPartition):
        return evaluate_partition(f, result.p, result.witness)
    if isinstance(result.witness, tuple):
        return evaluate_gridlike(f, result.p, *result.witness)
    raise TypeError("1D results carry index witnesses; re-evaluate with the path")


def strict_gap_instance(
    f: GridFunction, p: float, rel: float = 1e-9
) -> tuple[VariationResult, VariationResult] | None:
    """(V_p, |f|_p-var) when the controlled variation is strictly larger, else None.

    The controlled witness of a strict gap is never grid-like.
    """
    vp = vp_2d_exact(f, p)
    cp = controlled_pvar_exact(f, p)
    if cp.power_sum > vp.power_sum + rel * max(1.0, vp.power_sum):
        return vp, cp
    return None


def sandwich_constant(p: float, eps: float) -> float:
    """Constant c with |f|_{(p+eps)-var} <= c · V_p(f) on any grid.

    c = 4 · c_YT(p, q) where q is the Hölder conjugate of p + eps and c_YT is the
    two-parameter Young maximal constant at its optimal α.
    """
    from rectvar import young

    if not p >= 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if not eps > 0:
        raise DomainError(f"eps must be > 0, got {eps}")
    q = 1.0 / (1.0 - 1.0 / (p + eps))
    exponents = young.ExponentTriple(p, q)
    if exponents.theta <= 1:
        raise DomainError(f"theta = {exponents.theta} must exceed 1")
    alpha = young.optimal_alpha(exponents.theta)
    return 4.0 * young.yt_bound_2d(exponents.with_alpha(alpha))


def verify_sandwich(
    f: GridFunction, p: float, eps: float, r: Rect | None = None
) -> InequalityReport:
    """Check (1/c)|f|_{(p+eps)-var} <= V_p(f) <= |f|_{p-var} on ``r`` (default: whole grid)."""
    constant = sandwich_constant(p, eps)
    vp = vp_2d_exact(f, p, r)
    cp = controlled_pvar_exact(f, p, r)
    cp_eps = controlled_pvar_exact(f, p + eps, r)

    report = InequalityReport("sandwich")
    report.add(check_le(
        f"|f|_({p + eps:g})-var <= c(p, eps) * V_{p:g}",
        cp_eps.value,
        constant * vp.value,
        constant=constant,
        witness={"partition": cp_eps.witness, "dx": vp.witness[0], "dy": vp.witness[1]},
    ))
    report.add(check_le(
        f"V_{p:g} <= |f|_{p:g}-var",
        vp.value,
        cp.value,
        witness={"dx": vp.witness[0], "dy": vp.witness[1], "partition": cp.witness},
    ))
    report.add(check_le(
        f"|f|_({p + eps:g})-var <= |f|_{p:g}-var",
        cp_eps.value,
        cp.value,
        witness={"partition": cp_eps.witness},
    ))
    if p == 1:
        report.add(check_close(
            "V_1 = |f|_1-var",
            vp.value,
            cp.value,
            witness={"dx": vp.witness[0], "dy": vp.witness[1], "partition": cp.witness},
        ))
    return report
