"""Test grid functions, rectangular increments and the dual step function."""

import numpy as np
import pytest

from rectvar.errors import DomainError, GridError, PartitionError
from rectvar.geometry import Dissection, GridIndexRect, Rect, RectPartition
from rectvar.gridfunc import (
    GridFunction,
    build_dual_step_function,
    increment_additivity_check,
    rect_increment,
    signed_power,
)


def product_grid() -> GridFunction:
    """f(s, t) = s * t on {0, 1, 2}^2."""
    xs = Dissection((0.0, 1.0, 2.0))
    return GridFunction.sample(lambda s, t: s * t, xs, xs)


def test_increment_of_product():
    """The increment of st over [a,b]x[c,d] is (b-a)(d-c)."""
    f = product_grid()
    assert rect_increment(f, Rect(0, 1, 0, 1)) == 1.0
    assert rect_increment(f, Rect(0, 2, 1, 2)) == 2.0
    assert f.increment(GridIndexRect(0, 2, 0, 2)) == 4.0


def test_degenerate_increment_is_zero():
    """Zero-width rectangles have zero increment."""
    f = product_grid()
    assert rect_increment(f, Rect(1, 1, 0, 2)) == 0.0


def test_off_grid_corner_rejected():
    """Increments need corners on the grid."""
    with pytest.raises(GridError):
        rect_increment(product_grid(), Rect(0, 0.5, 0, 1))


def test_shape_and_finiteness_checked():
    """The value table must match the axes and be finite."""
    xs = Dissection((0.0, 1.0))
    with pytest.raises(GridError):
        GridFunction(xs, xs, np.zeros((2, 3)))
    with pytest.raises(GridError):
        GridFunction(xs, xs, np.array([[0.0, 1.0], [np.nan, 0.0]]))


def test_values_are_read_only_copies():
    """Mutating the source array does not change the function."""
    table = np.zeros((2, 2))
    f = GridFunction.on_integer_grid(table)
    table[1, 1] = 5.0
    assert f.values[1, 1] == 0.0
    with pytest.raises(ValueError):
        f.values[0, 0] = 1.0


def test_sample_marks_non_native():
    """Sampled functions are not grid-native; on_integer_grid ones are."""
    assert not product_grid().native
    assert GridFunction.on_integer_grid(np.zeros((2, 2))).native


def test_cell_increments_sum_to_whole():
    """Cell increments telescope to the increment over the whole grid."""
    rng = np.random.default_rng(3)
    f = GridFunction.on_integer_grid(rng.uniform(-1, 1, (4, 3)))
    assert f.cell_increments().sum() == pytest.approx(f.increment(f.full_index), abs=1e-12)


def test_additivity_over_pinwheel():
    """f(R) equals the sum of f over any partition of R."""
    rng = np.random.default_rng(7)
    f = GridFunction.on_integer_grid(rng.uniform(-1, 1, (4, 4)))
    wheel = RectPartition(
        (Rect(0, 2, 0, 1), Rect(2, 3, 0, 2), Rect(1, 3, 2, 3), Rect(0, 1, 1, 3), Rect(1, 2, 1, 2)),
        Rect(0, 3, 0, 3),
    )
    assert increment_additivity_check(f, Rect(0, 3, 0, 3), wheel)
    assert not increment_additivity_check(f, Rect(0, 2, 0, 3), wheel)


def test_restrict_and_transpose():
    """Restriction keeps the sub-grid values; transposition swaps the axes."""
    f = product_grid()
    sub = f.restrict(GridIndexRect(1, 2, 0, 2))
    assert sub.xs.points == (1.0, 2.0)
    assert sub.increment(sub.full_index) == 2.0
    assert f.transpose().increment(GridIndexRect(0, 1, 0, 2)) == 2.0


def test_signed_power_zero():
    """sgn(0) = 0, so zero stays zero even for exponent 0."""
    assert signed_power(0.0, 0.0) == 0.0
    assert signed_power(-8.0, 1 / 3) == pytest.approx(-2.0)


def test_dual_step_function_vanishes_on_axes():
    """y is zero on the first row and column and constant on each piece interior."""
    rng = np.random.default_rng(11)
    x = GridFunction.on_integer_grid(rng.uniform(-1, 1, (3, 3)))
    q = RectPartition((Rect(0, 1, 0, 2), Rect(1, 2, 0, 2)), Rect(0, 2, 0, 2))
    y = build_dual_step_function(x, q, 2.0)
    assert np.all(y.values[0, :] == 0) and np.all(y.values[:, 0] == 0)
    left = x.increment(GridIndexRect(0, 1, 0, 2))
    assert y.values[1, 1] == pytest.approx(left)
    assert y.values[1, 2] == pytest.approx(left)


def test_dual_step_function_p1_is_a_sign():
    """At p = 1 each piece carries sgn x(Q_j), with 0 for a zero increment."""
    values = np.random.default_rng(12).integers(-3, 4, (4, 4)).astype(float)
    values[1, 3] = values[0, 3] + values[1, 1] - values[0, 1]
    x = GridFunction.on_integer_grid(values)
    q = RectPartition((Rect(0, 3, 0, 1), Rect(0, 1, 1, 3), Rect(1, 3, 1, 3)), Rect(0, 3, 0, 3))
    y = build_dual_step_function(x, q, 1.0)
    assert set(np.unique(y.values)) <= {-1.0, 0.0, 1.0}
    assert np.all(y.values[1, 2:] == 0.0)
    assert np.all(y.values[1:, 1] == np.sign(x.increment(GridIndexRect(0, 3, 0, 1))))
    assert np.all(y.values[2:, 2:] == np.sign(x.increment(GridIndexRect(1, 3, 1, 3))))


def test_dual_step_function_errors():
    """Bad exponents and partitions of the wrong rectangle are rejected."""
    x = GridFunction.on_integer_grid(np.zeros((3, 3)))
    whole = RectPartition((Rect(0, 2, 0, 2),), Rect(0, 2, 0, 2))
    with pytest.raises(DomainError):
        build_dual_step_function(x, whole, 0.5)
    with pytest.raises(PartitionError):
        build_dual_step_function(x, RectPartition((Rect(0, 1, 0, 1),), Rect(0, 1, 0, 1)), 2.0)
