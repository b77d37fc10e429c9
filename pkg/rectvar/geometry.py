"""Rectangles, dissections and rectangle partitions.

Rectangles are closed, axis-aligned ``[a,b]×[c,d]``. Partitions of a finite cell grid are
searched depth-first over a bitmask of uncovered cells, always covering the first uncovered
cell; every rectangulation (pinwheels included) is produced exactly once.
"""

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import isfinite

from rectvar import config
from rectvar.errors import CapExceededError, GridError, PartitionError


@dataclass(frozen=True)
class Rect:
    """Closed rectangle [a,b]×[c,d]."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not all(isfinite(v) for v in (self.a, self.b, self.c, self.d)):
            raise GridError(f"rectangle coordinates must be finite: {self}")
        if self.a > self.b or self.c > self.d:
            raise GridError(f"rectangle needs a <= b and c <= d: {self}")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def height(self) -> float:
        return self.d - self.c

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def is_degenerate(self) -> bool:
        return self.a == self.b or self.c == self.d

    def contains(self, other: "Rect") -> bool:
        return (
            self.a <= other.a and other.b <= self.b
            and self.c <= other.c and other.d <= self.d
        )

    def contains_point(self, s: float, t: float) -> bool:
        return self.a <= s <= self.b and self.c <= t <= self.d

    def transpose(self) -> "Rect":
        return Rect(self.c, self.d, self.a, self.b)

    def scaled(self, factor: float) -> "Rect":
        return Rect(self.a * factor, self.b * factor, self.c * factor, self.d * factor)

    def as_list(self) -> list[float]:
        return [self.a, self.b, self.c, self.d]


def essentially_disjoint(r1: Rect, r2: Rect) -> bool:
    """True iff the intersection of two rectangles is empty or degenerate."""
    overlap_w = min(r1.b, r2.b) - max(r1.a, r2.a)
    overlap_h = min(r1.d, r2.d) - max(r1.c, r2.c)
    return overlap_w <= 0 or overlap_h <= 0


@dataclass(frozen=True)
class Dissection:
    """Strictly increasing points of an interval, both endpoints included."""

    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(v) for v in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise GridError("a dissection needs at least two distinct points")
        if not all(isfinite(v) for v in pts):
            raise GridError("dissection points must be finite")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise GridError(f"dissection points must be strictly increasing: {pts}")

    @classmethod
    def from_points(
        cls,
        points: Sequence[float],
        lo: float | None = None,
        hi: float | None = None,
    ) -> "Dissection":
        """Sort points, add the endpoints and collapse near-ties.

        Args:
            points: Points in any order
            lo: Optional left endpoint to include
            hi: Optional right endpoint to include

        Returns:
            Dissection: The cleaned-up dissection
        """
        values = sorted(float(v) for v in points)
        if lo is not None:
            values = [float(lo)] + [v for v in values if v > lo + config.TIE_TOLERANCE]
        if hi is not None:
            values = [v for v in values if v < hi - config.TIE_TOLERANCE] + [float(hi)]
        collapsed: list[float] = []
        for v in values:
            if collapsed and abs(v - collapsed[-1]) < config.TIE_TOLERANCE:
                continue
            collapsed.append(v)
        return cls(tuple(collapsed))

    @classmethod
    def uniform(cls, lo: float, hi: float, n_points: int) -> "Dissection":
        """Uniform dissection of [lo, hi] with n_points points."""
        if n_points < 2:
            raise GridError("a uniform dissection needs at least two points")
        step = (hi - lo) / (n_points - 1)
        pts = [lo + k * step for k in range(n_points - 1)] + [hi]
        return cls(tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[float]:
        return iter(self.points)

    def __getitem__(self, k: int) -> float:
        return self.points[k]

    @property
    def lo(self) -> float:
        return self.points[0]

    @property
    def hi(self) -> float:
        return self.points[-1]

    @property
    def interior(self) -> tuple[float, ...]:
        return self.points[1:-1]

    def intervals(self) -> list[tuple[float, float]]:
        return list(zip(self.points, self.points[1:]))

    def index_of(self, value: float) -> int:
        """Index of a point of this dissection; off-grid values raise GridError."""
        for k, v in enumerate(self.points):
            if abs(v - value) < config.TIE_TOLERANCE:
                return k
        raise GridError(f"{value!r} is not a point of the grid")

    def subset(self, indices: Sequence[int]) -> "Dissection":
        return Dissection(tuple(self.points[k] for k in indices))


@dataclass(frozen=True, order=True)
class GridIndexRect:
    """Integer shadow of a grid-aligned rectangle: point indices i0 < i1, j0 < j1."""

    i0: int
    i1: int
    j0: int
    j1: int

    def __post_init__(self):
        if self.i0 < 0 or self.j0 < 0 or self.i0 >= self.i1 or self.j0 >= self.j1:
            raise GridError(f"grid index rectangle needs 0 <= i0 < i1, 0 <= j0 < j1: {self}")

    @property
    def cells(self) -> int:
        return (self.i1 - self.i0) * (self.j1 - self.j0)

    def shifted(self, di: int, dj: int) -> "GridIndexRect":
        return GridIndexRect(self.i0 + di, self.i1 + di, self.j0 + dj, self.j1 + dj)

    def transpose(self) -> "GridIndexRect":
        return GridIndexRect(self.j0, self.j1, self.i0, self.i1)

    def to_rect(self, xs: Dissection, ys: Dissection) -> Rect:
        if self.i1 >= len(xs) or self.j1 >= len(ys):
            raise GridError(f"{self} is outside a {len(xs)}x{len(ys)} grid")
        return Rect(xs[self.i0], xs[self.i1], ys[self.j0], ys[self.j1])


def grid_subrects(n_points_x: int, n_points_y: int) -> Iterator[GridIndexRect]:
    """All non-degenerate grid-aligned rectangles of a grid with the given point counts."""
    for i0 in range(n_points_x - 1):
        for i1 in range(i0 + 1, n_points_x):
            for j0 in range(n_points_y - 1):
                for j1 in range(j0 + 1, n_points_y):
                    yield GridIndexRect(i0, i1, j0, j1)


@dataclass(frozen=True)
class RectPartition:
    """Finite set of rectangles meant to partition ``target``.

    Construction does not validate; use :func:`validate_partition`.
    """

    rects: tuple[Rect, ...]
    target: Rect

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))

    def __len__(self) -> int:
        return len(self.rects)

    def __iter__(self) -> Iterator[Rect]:
        return iter(self.rects)

    def canonical(self) -> tuple[tuple[float, float, float, float], ...]:
        """Sorted coordinate tuples, for set comparisons."""
        return tuple(sorted((r.a, r.b, r.c, r.d) for r in self.rects))

    def is_gridlike(self) -> bool:
        """True iff the partition is the product of one dissection per axis."""
        _, _, cells = refine_to_gridlike(self)
        return all(len(v) == 1 for v in cells.values())

    def transpose(self) -> "RectPartition":
        return RectPartition(tuple(r.transpose() for r in self.rects), self.target.transpose())

    def as_list(self) -> list[list[float]]:
        return [list(r) for r in self.canonical()]


def _cell_grid(rects: Sequence[Rect], target: Rect) -> tuple[list[float], list[float]]:
    xs = sorted({target.a, target.b, *(r.a for r in rects), *(r.b for r in rects)})
    ys = sorted({target.c, target.d, *(r.c for r in rects), *(r.d for r in rects)})
    return xs, ys


def validate_partition(p: RectPartition) -> bool:
    """Check that ``p.rects`` are essentially disjoint, non-degenerate and cover ``p.target``."""
    rects = p.rects
    if not rects or p.target.is_degenerate:
        return False
    for r in rects:
        if r.is_degenerate or not p.target.contains(r):
            return False
    for k, r1 in enumerate(rects):
        for r2 in rects[k + 1:]:
            if not essentially_disjoint(r1, r2):
                return False
    total = sum(r.area for r in rects)
    if abs(total - p.target.area) > config.CHECK_TOLERANCE * max(1.0, p.target.area):
        return False
    xs, ys = _cell_grid(rects, p.target)
    for s0, s1 in zip(xs, xs[1:]):
        for t0, t1 in zip(ys, ys[1:]):
            sm, tm = 0.5 * (s0 + s1), 0.5 * (t0 + t1)
            if not any(r.contains_point(sm, tm) for r in rects):
                return False
    return True


def enumerate_gridlike(dx: Dissection, dy: Dissection) -> RectPartition:
    """Grid-like partition {[t_i,t_{i+1}]×[t'_j,t'_{j+1}]} of two dissections."""
    rects = tuple(
        Rect(s0, s1, t0, t1) for s0, s1 in dx.intervals() for t0, t1 in dy.intervals()
    )
    return RectPartition(rects, Rect(dx.lo, dx.hi, dy.lo, dy.hi))


def refine_to_gridlike(
    p: RectPartition,
) -> tuple[Dissection, Dissection, dict[Rect, tuple[Rect, ...]]]:
    """Common grid refinement of a partition.

    Args:
        p: A valid rectangle partition

    Returns:
        (dx, dy, cells) where dx, dy collect every edge coordinate and ``cells`` maps each
        member to the grid cells it is the union of
    """
    if not validate_partition(p):
        raise PartitionError("cannot refine an invalid partition")
    xs, ys = _cell_grid(p.rects, p.target)
    dx, dy = Dissection(tuple(xs)), Dissection(tuple(ys))
    cells: dict[Rect, tuple[Rect, ...]] = {}
    for r in p.rects:
        cells[r] = tuple(
            Rect(s0, s1, t0, t1)
            for s0, s1 in dx.intervals() if r.a <= s0 and s1 <= r.b
            for t0, t1 in dy.intervals() if r.c <= t0 and t1 <= r.d
        )
    return dx, dy, cells


# Rectangulations of an nx × ny cell grid. Cell (i, j) is bit j * nx + i.

def _check_cells(nx: int, ny: int, cap: int | None) -> None:
    if nx < 1 or ny < 1:
        raise GridError(f"cell grid must be at least 1x1, got {nx}x{ny}")
    limit = config.get_partition_cap() if cap is None else cap
    if nx * ny > limit:
        raise CapExceededError("rectangulation search", nx * ny, limit)


@lru_cache(maxsize=64)
def _anchored_rects(nx: int, ny: int) -> tuple[tuple[tuple[tuple[int, GridIndexRect], ...], ...], ...]:
    """Per cell bit: rectangles anchored there, grouped by width, heights ascending."""
    anchors = []
    for j in range(ny):
        for i in range(nx):
            by_width = []
            for w in range(1, nx - i + 1):
                column = []
                for h in range(1, ny - j + 1):
                    mask = 0
                    for jj in range(j, j + h):
                        for ii in range(i, i + w):
                            mask |= 1 << (jj * nx + ii)
                    column.append((mask, GridIndexRect(i, i + w, j, j + h)))
                by_width.append(tuple(column))
            anchors.append(tuple(by_width))
    return tuple(anchors)


def _fitting(anchors, free: int) -> Iterator[tuple[int, GridIndexRect]]:
    bit = (free & -free).bit_length() - 1
    for column in anchors[bit]:
        if column[0][0] & free != column[0][0]:
            break
        for mask, rect in column:
            if mask & free != mask:
                break
            yield mask, rect


def iter_index_partitions(
    nx: int, ny: int, cap: int | None = None
) -> Iterator[tuple[GridIndexRect, ...]]:
    """Yield every rectangulation of the nx × ny cell grid as index rectangles."""
    _check_cells(nx, ny, cap)
    anchors = _anchored_rects(nx, ny)

    def cover(free: int) -> Iterator[tuple[GridIndexRect, ...]]:
        if free == 0:
            yield ()
            return
        for mask, rect in _fitting(anchors, free):
            for rest in cover(free ^ mask):
                yield (rect,) + rest

    yield from cover((1 << (nx * ny)) - 1)


def enumerate_rect_partitions(
    nx: int, ny: int, cap: int | None = None
) -> Iterator[RectPartition]:
    """Yield every partition of the nx × ny unit-cell grid into grid-aligned rectangles."""
    xs = Dissection(tuple(range(nx + 1)))
    ys = Dissection(tuple(range(ny + 1)))
    target = Rect(0.0, float(nx), 0.0, float(ny))
    for rects in iter_index_partitions(nx, ny, cap):
        yield RectPartition(tuple(r.to_rect(xs, ys) for r in rects), target)


def count_rect_partitions(nx: int, ny: int, cap: int | None = None) -> int:
    """Number of rectangulations of the nx × ny cell grid, without materializing them."""
    _check_cells(nx, ny, cap)
    anchors = _anchored_rects(nx, ny)
    memo: dict[int, int] = {0: 1}

    def count(free: int) -> int:
        if free in memo:
            return memo[free]
        total = sum(count(free ^ mask) for mask, _ in _fitting(anchors, free))
        memo[free] = total
        return total

    return count((1 << (nx * ny)) - 1)


def best_rectangulation(
    nx: int,
    ny: int,
    weight: Callable[[GridIndexRect], float],
    cap: int | None = None,
) -> tuple[float, tuple[GridIndexRect, ...]]:
    """Maximize Σ weight(A) over all rectangulations of the nx × ny cell grid.

    The search is memoized on the uncovered-cell mask, so each reachable region is solved
    once. Ties keep the first rectangulation found in enumeration order.

    Args:
        nx: Cells along the s-axis
        ny: Cells along the t-axis
        weight: Weight of a rectangle given in local cell indices
        cap: Cell cap (defaults to the configured partition cap)

    Returns:
        (best total, maximizing rectangulation)
    """
    _check_cells(nx, ny, cap)
    anchors = _anchored_rects(nx, ny)
    weights: dict[GridIndexRect, float] = {}
    memo: dict[int, tuple[float, int, GridIndexRect | None]] = {0: (0.0, 0, None)}

    def solve(free: int) -> float:
        if free in memo:
            return memo[free][0]
        best_value, best_mask, best_rect = float("-inf"), 0, None
        for mask, rect in _fitting(anchors, free):
            if rect not in weights:
                weights[rect] = float(weight(rect))
            value = weights[rect] + solve(free ^ mask)
            if value > best_value:
                best_value, best_mask, best_rect = value, mask, rect
        memo[free] = (best_value, best_mask, best_rect)
        return best_value

    full = (1 << (nx * ny)) - 1
    total = solve(full)
    witness = []
    free = full
    while free:
        _, mask, rect = memo[free]
        witness.append(rect)
        free ^= mask
    return total, tuple(witness)
