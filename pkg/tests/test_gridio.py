"""Test CSV and JSON grid input and output."""

import json

import numpy as np
import pytest

from rectvar.errors import GridError, GridFormatError
from rectvar.gridio import load_grid_function, load_grid_pair, load_paths, save_grid_function
from suites.common import random_grid, rng_for


def test_load_csv_product(tmp_path):
    """2x2 CSV of f(s,t) = st on {0,1}^2."""
    path = tmp_path / "st.csv"
    path.write_text(",0,1\n0,0,0\n1,0,1\n")
    f = load_grid_function(path)
    assert f.xs.points == (0.0, 1.0)
    assert f.ys.points == (0.0, 1.0)
    assert f.values.tolist() == [[0.0, 0.0], [0.0, 1.0]]
    assert f.native


def test_csv_rows_are_t_columns_are_s(tmp_path):
    """Body row j holds f(xs[i], ys[j]) for each column i."""
    path = tmp_path / "grid.csv"
    path.write_text(",0,1,2\n0,1,2,3\n5,4,5,6\n")
    f = load_grid_function(path)
    assert f.shape == (3, 2)
    assert f.values[2, 0] == 3.0
    assert f.values[0, 1] == 4.0


def test_csv_bad_cell_reports_position(tmp_path):
    """A non-numeric cell raises with its line and column."""
    path = tmp_path / "bad.csv"
    path.write_text(",0,1\n0,0,0\n1,0,oops\n")
    with pytest.raises(GridFormatError) as exc:
        load_grid_function(path)
    assert exc.value.line == 3
    assert exc.value.column == 3


def test_csv_ragged_rows(tmp_path):
    """A short row is reported with its line number."""
    path = tmp_path / "ragged.csv"
    path.write_text(",0,1\n0,0,0\n1,0\n")
    with pytest.raises(GridFormatError, match="line 3") as exc:
        load_grid_function(path)
    assert exc.value.line == 3
    assert "2 fields, expected 3" in str(exc.value)


def test_load_json_transposes(tmp_path):
    """JSON values are indexed [t][s]."""
    path = tmp_path / "grid.json"
    path.write_text(json.dumps({"xs": [0, 1, 2], "ys": [0, 1], "values": [[0, 0, 0], [0, 1, 2]]}))
    f = load_grid_function(path)
    assert f.shape == (3, 2)
    assert f.values[2, 1] == 2.0


def test_json_row_length_mismatch(tmp_path):
    """A values row of the wrong length is a dimension error."""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"xs": [0, 1], "ys": [0, 1], "values": [[0, 0], [0]]}))
    with pytest.raises(GridError):
        load_grid_function(path)


def test_json_syntax_error_position(tmp_path):
    """Invalid JSON raises with line and column."""
    path = tmp_path / "broken.json"
    path.write_text('{"xs": [0, 1],\n "ys": [0, 1 }')
    with pytest.raises(GridFormatError) as exc:
        load_grid_function(path)
    assert exc.value.line == 2


def test_non_finite_values_rejected(tmp_path):
    """NaN in the body is refused."""
    path = tmp_path / "nan.csv"
    path.write_text(",0,1\n0,0,nan\n1,0,1\n")
    with pytest.raises(GridError):
        load_grid_function(path)


def test_unordered_axis_rejected(tmp_path):
    """Axis points must increase."""
    path = tmp_path / "order.csv"
    path.write_text(",1,0\n0,0,0\n1,0,1\n")
    with pytest.raises(GridError):
        load_grid_function(path)


def test_missing_file(tmp_path):
    """A missing file is a format error, not a crash."""
    with pytest.raises(GridFormatError):
        load_grid_function(tmp_path / "nope.csv")


@pytest.mark.parametrize("suffix", [".csv", ".json"])
def test_round_trip_is_bit_exact(tmp_path, suffix):
    """save then load reproduces the table exactly."""
    f = random_grid(rng_for(30, "io"), 4, 3)
    path = save_grid_function(f, tmp_path / f"grid{suffix}")
    g = load_grid_function(path)
    assert np.array_equal(f.values, g.values)
    assert f.xs == g.xs and f.ys == g.ys
    assert b"\r\n" not in path.read_bytes()


def test_load_paths_and_pairs(tmp_path):
    """Young inputs: a pair of paths and a pair of grids."""
    paths = tmp_path / "paths.json"
    paths.write_text(json.dumps({"x": [0, 1, 3], "y": [0, 2, 1]}))
    x, y = load_paths(paths)
    assert x == [0.0, 1.0, 3.0] and y == [0.0, 2.0, 1.0]

    grid = {"xs": [0, 1], "ys": [0, 1], "values": [[0, 0], [0, 1]]}
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps({"x": grid, "y": grid}))
    gx, gy = load_grid_pair(pair)
    assert gx.values.tolist() == gy.values.tolist() == [[0.0, 0.0], [0.0, 1.0]]


def test_load_paths_length_mismatch(tmp_path):
    """Paths of different lengths are refused."""
    path = tmp_path / "paths.json"
    path.write_text(json.dumps({"x": [0, 1, 3], "y": [0, 2]}))
    with pytest.raises(GridError):
        load_paths(path)
