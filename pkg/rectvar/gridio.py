"""Read and write grid functions as CSV or JSON.

CSV layout: the first row holds the s-axis points (its first cell is ignored), the first
column holds the t-axis points, and the body holds f(s, t) with one row per t.

JSON layout: {"xs": [...], "ys": [...], "values": [[...]]} with values[j][i] = f(xs[i], ys[j]).

Floats are written with repr, so a save/load round trip is bit-exact.
"""

import json
from pathlib import Path

import numpy as np
import pyarrow as pa
from pyarrow import csv

from rectvar.errors import GridError, GridFormatError
from rectvar.geometry import Dissection
from rectvar.gridfunc import GridFunction


def _parse_float(text: str, line: int, column: int) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise GridFormatError(f"not a number: {text!r}", line, column) from None


def _axis(points: list[float], name: str) -> Dissection:
    try:
        return Dissection(tuple(points))
    except GridError as e:
        raise GridError(f"{name}: {e}") from None


def _read_csv(path: Path) -> GridFunction:
    with open(path, encoding="utf-8") as f:
        header = f.readline()
    if not header.strip():
        raise GridFormatError("empty CSV file", 1)
    names = [f"c{k}" for k in range(len(header.rstrip("\r\n").split(",")))]

    ragged = []

    def on_invalid_row(row) -> str:
        ragged.append(row)
        return "skip"

    # Serial reads keep physical line numbers on invalid rows
    read_options = csv.ReadOptions(column_names=names, use_threads=False)
    parse_options = csv.ParseOptions(invalid_row_handler=on_invalid_row)
    convert_options = csv.ConvertOptions(
        column_types={name: pa.string() for name in names},
        strings_can_be_null=False,
        quoted_strings_can_be_null=False,
    )
    try:
        table = csv.read_csv(
            path,
            read_options=read_options,
            parse_options=parse_options,
            convert_options=convert_options,
        )
    except pa.ArrowInvalid as e:
        raise GridFormatError(f"malformed CSV: {e}") from None
    if ragged:
        row = ragged[0]
        raise GridFormatError(
            f"row has {row.actual_columns} fields, expected {row.expected_columns}", row.number
        )

    columns = [table.column(name).to_pylist() for name in names]
    n_rows = table.num_rows
    if n_rows < 3 or len(names) < 3:
        raise GridError(
            f"CSV grid needs at least 2 points per axis, got {len(names) - 1} x {n_rows - 1}"
        )

    xs = [_parse_float(columns[k][0], 1, k + 1) for k in range(1, len(names))]
    ys = [_parse_float(columns[0][r], r + 1, 1) for r in range(1, n_rows)]
    values = np.empty((len(xs), len(ys)))
    for k in range(1, len(names)):
        for r in range(1, n_rows):
            values[k - 1, r - 1] = _parse_float(columns[k][r], r + 1, k + 1)
    return GridFunction(_axis(xs, "s-axis"), _axis(ys, "t-axis"), values)


def _load_json(path: Path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise GridFormatError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None


def grid_from_dict(data: dict) -> GridFunction:
    """Build a grid function from the JSON layout (values indexed [t][s])."""
    if not isinstance(data, dict) or not {"xs", "ys", "values"} <= set(data):
        raise GridFormatError('JSON grid must be an object with "xs", "ys" and "values"')

    xs, ys, rows = data["xs"], data["ys"], data["values"]
    if len(rows) != len(ys):
        raise GridError(f"values has {len(rows)} rows, expected one per ys point ({len(ys)})")
    for j, row in enumerate(rows):
        if len(row) != len(xs):
            raise GridError(f"values row {j} has length {len(row)}, expected {len(xs)}")
    try:
        values = np.array(rows, dtype=float).T
        xs_f = [float(v) for v in xs]
        ys_f = [float(v) for v in ys]
    except (TypeError, ValueError) as e:
        raise GridFormatError(f"non-numeric entry: {e}") from None
    return GridFunction(_axis(xs_f, "xs"), _axis(ys_f, "ys"), values)


def _is_json(path: Path) -> bool:
    if path.suffix.lower() == ".json":
        return True
    if path.suffix.lower() == ".csv":
        return False
    with open(path, encoding="utf-8") as f:
        return f.read(64).lstrip().startswith("{")


def load_grid_function(path: str | Path) -> GridFunction:
    """Load a grid-native function from a CSV or JSON file.

    Args:
        path: File to read; the format follows the suffix, else the first character

    Returns:
        GridFunction with values[i, j] = f(xs[i], ys[j])

    Raises:
        GridFormatError: The file does not parse (line/column when known)
        GridError: Dimension mismatch, unordered axes or non-finite values
    """
    path = Path(path)
    if not path.exists():
        raise GridFormatError(f"no such file: {path}")
    if _is_json(path):
        return grid_from_dict(_load_json(path))
    return _read_csv(path)


def save_grid_function(f: GridFunction, path: str | Path) -> Path:
    """Write ``f`` as JSON if the suffix is .json, else as CSV. Line endings are LF."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix.lower() == ".json":
        data = {
            "xs": [float(v) for v in f.xs],
            "ys": [float(v) for v in f.ys],
            "values": f.values.T.tolist(),
        }
        with open(path, "w", encoding="utf-8", newline="\n") as out:
            json.dump(data, out, indent=2)
            out.write("\n")
        return path

    lines = ["," + ",".join(repr(float(v)) for v in f.xs)]
    for j, t in enumerate(f.ys):
        lines.append(",".join([repr(float(t)), *(repr(float(v)) for v in f.values[:, j])]))
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        out.write("\n".join(lines) + "\n")
    return path


def load_paths(path: str | Path) -> tuple[list[float], list[float]]:
    """Read a pair of one-parameter paths from JSON {"x": [...], "y": [...]}."""
    data = _load_json(Path(path))
    if not isinstance(data, dict) or not {"x", "y"} <= set(data):
        raise GridFormatError('path file must be an object with "x" and "y"')
    try:
        x = [float(v) for v in data["x"]]
        y = [float(v) for v in data["y"]]
    except (TypeError, ValueError) as e:
        raise GridFormatError(f"non-numeric entry: {e}") from None
    if len(x) != len(y):
        raise GridError(f"x has {len(x)} points, y has {len(y)}")
    return x, y


def load_grid_pair(path: str | Path) -> tuple[GridFunction, GridFunction]:
    """Read two grid functions from JSON {"x": <grid>, "y": <grid>}."""
    data = _load_json(Path(path))
    if not isinstance(data, dict) or not {"x", "y"} <= set(data):
        raise GridFormatError('grid pair file must be an object with "x" and "y"')
    return grid_from_dict(data["x"]), grid_from_dict(data["y"])
