"""Loading and validating the simulator's CSV datasets.

Every dataset starts with a ``# schema: <name> <version>`` line followed
by a header row.  Loaders check both and report exactly what differed, so
a renderer never draws from a file it does not understand.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

SCHEMAS = {
    "cells": "qreuse/cells v1",
    "episodes": "qreuse/episodes v1",
    "per_network_means": "qreuse/per-network-means v1",
    "action_frequencies": "qreuse/action-frequencies v1",
    "timeseries": "qreuse/timeseries v1",
    "grid": "qreuse/alpha-gamma-grid v1",
}


class SchemaError(ValueError):
    """The file is not the dataset the caller asked for."""


@dataclass
class Dataset:
    schema: str
    columns: list[str]
    rows: list[list[str]]

    def column(self, name: str) -> list[str]:
        return [row[self.columns.index(name)] for row in self.rows]

    def floats(self, name: str) -> list[float]:
        return [float(v) for v in self.column(name)]


def load_dataset(path: str | Path, expect_schema: str,
                 required_columns: tuple[str, ...] = ()) -> Dataset:
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"dataset not found: {path}")
    with path.open() as fh:
        first = fh.readline().strip()
        prefix = "# schema: "
        if not first.startswith(prefix):
            raise SchemaError(f"{path}: missing schema line, found {first!r}")
        schema = first[len(prefix):]
        if schema != expect_schema:
            raise SchemaError(
                f"{path}: expected schema {expect_schema!r}, found {schema!r}")
        reader = csv.reader(fh)
        try:
            columns = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: no header row") from None
        missing = [c for c in required_columns if c not in columns]
        if missing:
            raise SchemaError(
                f"{path}: expected columns {list(required_columns)}, "
                f"found {columns} (missing {missing})")
        rows = [row for row in reader if row]
    if not rows:
        raise SchemaError(f"{path}: dataset has no rows, nothing to draw")
    return Dataset(schema=schema, columns=columns, rows=rows)
