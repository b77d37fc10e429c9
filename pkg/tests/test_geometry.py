"""Test rectangles, dissections and rectangulation enumeration."""

import pytest

from rectvar.errors import CapExceededError, GridError, PartitionError
from rectvar.geometry import (
    Dissection,
    GridIndexRect,
    Rect,
    RectPartition,
    best_rectangulation,
    count_rect_partitions,
    enumerate_gridlike,
    enumerate_rect_partitions,
    essentially_disjoint,
    grid_subrects,
    iter_index_partitions,
    refine_to_gridlike,
    validate_partition,
)
from suites.oracles import rect_partitions_oracle


def pinwheel() -> RectPartition:
    return RectPartition(
        (
            Rect(0, 2, 0, 1),
            Rect(2, 3, 0, 2),
            Rect(1, 3, 2, 3),
            Rect(0, 1, 1, 3),
            Rect(1, 2, 1, 2),
        ),
        Rect(0, 3, 0, 3),
    )


def test_rect_rejects_reversed_corners():
    """a > b or c > d is an error, a == b is a degenerate rectangle."""
    with pytest.raises(GridError):
        Rect(1, 0, 0, 1)
    assert Rect(1, 1, 0, 1).is_degenerate
    assert Rect(0, 2, 0, 3).area == 6


def test_essentially_disjoint_allows_shared_edges():
    """Rectangles touching along an edge or a corner are essentially disjoint."""
    assert essentially_disjoint(Rect(0, 1, 0, 1), Rect(1, 2, 0, 1))
    assert essentially_disjoint(Rect(0, 1, 0, 1), Rect(1, 2, 1, 2))
    assert not essentially_disjoint(Rect(0, 2, 0, 2), Rect(1, 3, 1, 3))


def test_dissection_must_increase():
    """Dissections need two or more strictly increasing points."""
    with pytest.raises(GridError):
        Dissection((0.0,))
    with pytest.raises(GridError):
        Dissection((0.0, 1.0, 1.0))
    d = Dissection.from_points([0.5, 0.25, 0.5 + 1e-14], lo=0.0, hi=1.0)
    assert d.points == (0.0, 0.25, 0.5, 1.0)


def test_from_points_keeps_exact_endpoints():
    """Points within the tie tolerance of lo or hi collapse onto the endpoint."""
    d = Dissection.from_points([0.5, 1 - 1e-13, 1e-13], lo=0.0, hi=1.0)
    assert d.points == (0.0, 0.5, 1.0)
    assert d.lo == 0.0 and d.hi == 1.0


def test_dissection_index_of_rejects_off_grid():
    """index_of finds grid points and refuses anything else."""
    d = Dissection.uniform(0.0, 2.0, 5)
    assert d.index_of(1.5) == 3
    with pytest.raises(GridError):
        d.index_of(0.3)


def test_grid_subrects_count():
    """A grid with n and m points has C(n,2) * C(m,2) non-degenerate rectangles."""
    assert len(list(grid_subrects(4, 3))) == 6 * 3


def test_gridlike_partition_is_valid():
    """The product of two dissections partitions their rectangle."""
    part = enumerate_gridlike(Dissection((0, 1, 3)), Dissection((0, 2, 3)))
    assert len(part) == 4
    assert validate_partition(part)
    assert part.is_gridlike()


def test_pinwheel_is_valid_but_not_gridlike():
    """The pinwheel is a rectangulation that is not grid-like."""
    part = pinwheel()
    assert validate_partition(part)
    assert not part.is_gridlike()


def test_validate_partition_rejects_overlap_and_gap():
    """Overlapping members or uncovered area make a partition invalid."""
    target = Rect(0, 2, 0, 1)
    assert not validate_partition(RectPartition((Rect(0, 1.5, 0, 1), Rect(1, 2, 0, 1)), target))
    assert not validate_partition(RectPartition((Rect(0, 1, 0, 1),), target))
    assert not validate_partition(RectPartition((Rect(0, 1, 0, 1), Rect(1, 1, 0, 1)), target))


def test_refine_to_gridlike_splits_pinwheel():
    """Every pinwheel member is a union of cells of the 3x3 refinement."""
    dx, dy, cells = refine_to_gridlike(pinwheel())
    assert dx.points == (0.0, 1.0, 2.0, 3.0)
    assert dy.points == (0.0, 1.0, 2.0, 3.0)
    assert sum(len(v) for v in cells.values()) == 9
    assert len(cells[Rect(0, 2, 0, 1)]) == 2


def test_refine_to_gridlike_rejects_invalid():
    """Refining an invalid partition is an error."""
    with pytest.raises(PartitionError):
        refine_to_gridlike(RectPartition((Rect(0, 1, 0, 1),), Rect(0, 2, 0, 1)))


@pytest.mark.parametrize(
    "nx,ny,expected",
    [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 8), (2, 3, 34), (3, 2, 34), (3, 3, 322), (4, 4, 70878)],
)
def test_rectangulation_counts(nx, ny, expected):
    """Known rectangulation counts of small cell grids."""
    assert count_rect_partitions(nx, ny) == expected


def test_enumeration_matches_oracle():
    """The bitmask search and the set-based oracle produce the same rectangulations."""
    for nx in range(1, 4):
        for ny in range(1, 4):
            fast = [part.canonical() for part in enumerate_rect_partitions(nx, ny)]
            assert len(fast) == len(set(fast))
            assert set(fast) == rect_partitions_oracle(nx, ny)


def test_enumerated_partitions_are_valid():
    """Every enumerated 3x3 rectangulation validates, and exactly one is the single cell grid."""
    parts = list(enumerate_rect_partitions(3, 3))
    assert all(validate_partition(part) for part in parts)
    assert sum(len(part) == 9 for part in parts) == 1
    assert sum(len(part) == 1 for part in parts) == 1


def test_pinwheels_are_enumerated():
    """The two 3x3 pinwheels appear among the enumerated rectangulations."""
    canon = {part.canonical() for part in enumerate_rect_partitions(3, 3)}
    wheel = pinwheel()
    mirrored = RectPartition(tuple(Rect(3 - r.b, 3 - r.a, r.c, r.d) for r in wheel), wheel.target)
    assert wheel.canonical() in canon
    assert mirrored.canonical() in canon


def test_cap_exceeded():
    """Searches above the cell cap raise instead of running."""
    with pytest.raises(CapExceededError):
        count_rect_partitions(5, 4, cap=16)
    with pytest.raises(CapExceededError):
        list(enumerate_rect_partitions(3, 3, cap=8))


def test_best_rectangulation_prefers_heavy_rectangle():
    """A weight that rewards one big rectangle picks the trivial partition."""
    total, rects = best_rectangulation(2, 2, lambda g: float(g.cells ** 2))
    assert total == 16.0
    assert rects == (GridIndexRect(0, 2, 0, 2),)


def test_best_rectangulation_matches_brute_force():
    """Memoized search equals the maximum over all enumerated rectangulations."""
    def weight(g):
        return ((g.i0 + 1) * 7 + g.i1 * 3 + g.j0 * 5 + g.j1 * 11) % 13 - 4.0

    total, rects = best_rectangulation(3, 2, weight)
    brute = max(sum(weight(g) for g in part) for part in iter_index_partitions(3, 2))
    assert total == brute
    assert sum(weight(g) for g in rects) == total
