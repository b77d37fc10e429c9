"""Arrow schemas for check records and scan results."""

import hashlib
from pathlib import Path

import pandas as pd
import pyarrow as pa
import pyarrow.parquet as pq

from rectvar.report import Report


def schema_hash(schema: pa.Schema) -> str:
    """Compute a stable hash of a schema for provenance tracking."""
    schema_str = str(schema)
    return hashlib.blake2b(schema_str.encode(), digest_size=16).hexdigest()


# One row per tested inequality
check_record_schema = pa.schema([
    ("report", pa.string()),
    ("name", pa.string()),
    ("lhs", pa.float64()),
    ("rhs", pa.float64()),
    ("constant", pa.float64()),
    ("slack", pa.float64()),
    ("pass", pa.bool_()),
    ("expect_pass", pa.bool_()),
    ("consistent", pa.bool_()),
])

# fbm_variation_scan output
scan_schema = pa.schema([
    ("n", pa.int64()),
    ("p", pa.float64()),
    ("value", pa.float64()),
    ("ratio", pa.float64()),
    ("method", pa.string()),
    ("bound", pa.string()),
])


SCHEMAS = {
    "check_records": check_record_schema,
    "scan": scan_schema,
}


def get_all_schema_hashes() -> dict[str, str]:
    """Generate schema hashes for all tables."""
    return {name: schema_hash(schema) for name, schema in SCHEMAS.items()}


def records_table(report: Report) -> pa.Table:
    """Flatten every check record of a report into a typed Arrow table."""
    rows = []
    for group in report.checks:
        for rec in group.records:
            rows.append({
                "report": group.name,
                "name": rec.name,
                "lhs": rec.lhs,
                "rhs": rec.rhs,
                "constant": rec.constant,
                "slack": rec.slack,
                "pass": rec.holds,
                "expect_pass": rec.expect_hold,
                "consistent": rec.consistent,
            })
    return pa.Table.from_pylist(rows, schema=check_record_schema)


def write_records(report: Report, path: Path) -> Path:
    """Write the flattened check records of ``report`` to a Parquet file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pq.write_table(records_table(report), path)
    return path


def scan_table(frame: pd.DataFrame) -> pa.Table:
    return pa.Table.from_pandas(frame, schema=scan_schema, preserve_index=False)
