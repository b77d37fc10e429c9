"""Real-valued functions on a finite product grid and their rectangular increments."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from rectvar import config
from rectvar.errors import DomainError, GridError, PartitionError
from rectvar.geometry import Dissection, GridIndexRect, Rect, RectPartition, validate_partition


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples ``values[i, j] = f(xs[i], ys[j])`` of a function on a product grid.

    ``native`` is True when the table is the whole function (data given on the grid), and
    False when it samples a function defined off the grid; suprema over the grid are then
    only lower bounds.
    """

    xs: Dissection
    ys: Dissection
    values: np.ndarray
    native: bool = True

    def __post_init__(self):
        table = np.array(self.values, dtype=float, copy=True)
        if table.shape != (len(self.xs), len(self.ys)):
            raise GridError(
                f"value table has shape {table.shape}, expected {(len(self.xs), len(self.ys))}"
            )
        if not np.all(np.isfinite(table)):
            raise GridError("grid values must be finite")
        table.setflags(write=False)
        object.__setattr__(self, "values", table)

    @classmethod
    def sample(
        cls,
        func: Callable[[np.ndarray, np.ndarray], np.ndarray],
        xs: Dissection,
        ys: Dissection,
    ) -> "GridFunction":
        """Sample a function on the product of two dissections.

        ``func`` is called with broadcast coordinate arrays; scalar-only callables are
        vectorized.
        """
        s, t = np.meshgrid(np.asarray(xs.points), np.asarray(ys.points), indexing="ij")
        table = np.asarray(func(s, t), dtype=float)
        if table.shape != s.shape:
            table = np.vectorize(func, otypes=[float])(s, t)
        return cls(xs, ys, table, native=False)

    @classmethod
    def on_integer_grid(cls, values: np.ndarray) -> "GridFunction":
        """Grid-native function on the integer points 0..n-1 × 0..m-1."""
        table = np.asarray(values, dtype=float)
        if table.ndim != 2 or min(table.shape) < 2:
            raise GridError(f"need a 2D table with at least 2 points per axis, got {table.shape}")
        xs = Dissection(tuple(range(table.shape[0])))
        ys = Dissection(tuple(range(table.shape[1])))
        return cls(xs, ys, table)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def cells(self) -> tuple[int, int]:
        return self.values.shape[0] - 1, self.values.shape[1] - 1

    @property
    def domain(self) -> Rect:
        return Rect(self.xs.lo, self.xs.hi, self.ys.lo, self.ys.hi)

    @property
    def full_index(self) -> GridIndexRect:
        return GridIndexRect(0, len(self.xs) - 1, 0, len(self.ys) - 1)

    def index_rect(self, r: Rect) -> GridIndexRect:
        """Grid indices of a non-degenerate rectangle whose corners lie on the grid."""
        return GridIndexRect(
            self.xs.index_of(r.a), self.xs.index_of(r.b),
            self.ys.index_of(r.c), self.ys.index_of(r.d),
        )

    def to_rect(self, g: GridIndexRect) -> Rect:
        return g.to_rect(self.xs, self.ys)

    def increment(self, g: GridIndexRect) -> float:
        v = self.values
        return float(v[g.i1, g.j1] - v[g.i0, g.j1] - v[g.i1, g.j0] + v[g.i0, g.j0])

    def cell_increments(self) -> np.ndarray:
        """Increments over every cell of the grid, shape (n-1, m-1)."""
        return np.diff(np.diff(self.values, axis=0), axis=1)

    def restrict(self, g: GridIndexRect) -> "GridFunction":
        """The function on the sub-grid spanned by ``g``."""
        return GridFunction(
            self.xs.subset(range(g.i0, g.i1 + 1)),
            self.ys.subset(range(g.j0, g.j1 + 1)),
            self.values[g.i0:g.i1 + 1, g.j0:g.j1 + 1],
            native=self.native,
        )

    def transpose(self) -> "GridFunction":
        return GridFunction(self.ys, self.xs, self.values.T, native=self.native)


def rect_increment(f: GridFunction, r: Rect) -> float:
    """f(b,d) - f(a,d) - f(b,c) + f(a,c); corners must lie on the grid."""
    ia, ib = f.xs.index_of(r.a), f.xs.index_of(r.b)
    jc, jd = f.ys.index_of(r.c), f.ys.index_of(r.d)
    v = f.values
    return float(v[ib, jd] - v[ia, jd] - v[ib, jc] + v[ia, jc])


def increment_additivity_check(
    f: GridFunction,
    r: Rect,
    split: RectPartition,
    tol: float = config.ADDITIVITY_TOLERANCE,
) -> bool:
    """True iff f(r) equals the sum of f over the pieces of ``split`` within ``tol``."""
    if split.target != r or not validate_partition(split):
        return False
    total = sum(rect_increment(f, piece) for piece in split.rects)
    return abs(rect_increment(f, r) - total) <= tol


def signed_power(v: np.ndarray | float, exponent: float) -> np.ndarray:
    """|v|^exponent · sgn(v), with sgn(0) = 0 (so 0^0 contributes 0)."""
    v = np.asarray(v, dtype=float)
    return np.sign(v) * np.abs(v) ** exponent


def build_dual_step_function(x: GridFunction, q: RectPartition, p: float) -> GridFunction:
    """Step function y = Σ_j |x(Q_j)|^{p-1} sgn(x(Q_j)) · 1{(a_j,b_j]×(c_j,d_j]}.

    Pieces are left/bottom-open and right/top-closed, so y vanishes on the first row and
    column of the grid.

    Args:
        x: Grid function whose increments weight the pieces
        q: Partition of x's whole domain with corners on x's grid
        p: Exponent, p >= 1

    Returns:
        GridFunction: y on x's grid
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if not validate_partition(q) or q.target != x.domain:
        raise PartitionError("q must be a valid partition of the function's domain")
    try:
        pieces = [x.index_rect(piece) for piece in q.rects]
    except GridError as e:
        raise PartitionError(f"partition corners must lie on the grid: {e}") from e

    y = np.zeros(x.shape)
    for g in pieces:
        y[g.i0 + 1:g.i1 + 1, g.j0 + 1:g.j1 + 1] = signed_power(x.increment(g), p - 1)
    return GridFunction(x.xs, x.ys, y, native=x.native)
